#include "jlab/cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "jlab/errors.hpp"
#include "jlab/report.hpp"

namespace jlab::cli {

namespace {

// Shortest round-trip decimal form.
std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    auto parse_double = [&](std::string_view s) {
        double v = 0.0;
        const auto* first = s.data();
        const auto* last = s.data() + s.size();
        if (!s.empty() && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) throw InputError("cannot parse number '" + std::string(s) + "'");
        return v;
    };
    if (comma == std::string::npos) return {parse_double(text), 0.0};
    return {parse_double(std::string_view(text).substr(0, comma)),
            parse_double(std::string_view(text).substr(comma + 1))};
}

std::vector<Complex> parse_complex_list(const std::vector<std::string>& items) {
    std::vector<Complex> out;
    for (const auto& s : items) out.push_back(parse_complex(s));
    return out;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::ostringstream os;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
            os << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return os.str();
    }
};

void complex_header(std::vector<std::string>& header, const std::string& name, int count) {
    for (int i = 1; i <= count; ++i) {
        header.push_back(name + std::to_string(i) + "_re");
        header.push_back(name + std::to_string(i) + "_im");
    }
}

void complex_cells(std::vector<std::string>& row, const std::vector<Complex>& v) {
    for (const Complex& z : v) {
        row.push_back(fmt(z.real()));
        row.push_back(fmt(z.imag()));
    }
}

std::vector<Complex> to_vector(const Point& p) {
    return std::vector<Complex>(p.data(), p.data() + p.size());
}

struct Result {
    Json payload;
    std::optional<Csv> csv;
    std::vector<std::string> warnings;
    int exit_code = kOk;
};

struct Options {
    int n = 2;
    int d = 2;
    std::vector<std::string> alpha;
    std::string format = "json";
    RunConfig cfg;
    std::string m = "";
    std::string stencil = "central";
    std::vector<std::string> nu;
    std::vector<double> mu{1e-2, 3e-3, 1e-3, 3e-4};
    std::vector<int> coords;
    std::int64_t power = 1;

    FoliationParams params() const {
        FoliationParams p{n, d, parse_complex_list(alpha)};
        p.validate();
        return p;
    }
};

void add_common(CLI::App* sub, Options& o, bool with_alpha) {
    sub->add_option("--n", o.n, "ambient dimension n (2..8)")->required();
    sub->add_option("--d", o.d, "degree d (1..6)")->required();
    if (with_alpha) {
        sub->add_option("--alpha", o.alpha, "perturbation, one re,im pair per coordinate (repeat n times)");
    }
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", o.cfg.jobs, "worker threads");
    sub->add_option("--newton-tol", o.cfg.newton_tol);
    sub->add_option("--max-iters", o.cfg.max_iters);
    sub->add_option("--continuation-steps", o.cfg.continuation_steps);
    sub->add_option("--dedup-tol", o.cfg.dedup_tol);
    sub->add_option("--radius", o.cfg.radius);
    sub->add_option("--fd-step", o.cfg.fd_step);
    sub->add_option("--tol-hyp", o.cfg.tol_hyp);
    sub->add_option("--tol-nd", o.cfg.tol_nd);
    sub->add_option("--align-tol", o.cfg.align_tol);
    sub->add_option("--delta", o.cfg.delta);
    sub->add_option("--max-order", o.cfg.max_order);
    sub->add_option("--seed", o.cfg.seed);
    sub->add_option("--samples", o.cfg.samples);
}

Result cmd_counts(const Options& o) {
    const Counts c = counts(o.n, o.d);
    Result r;
    r.payload = c;
    r.csv = Csv{{"N", "M", "K"}, {{std::to_string(c.N), std::to_string(c.M), std::to_string(c.K)}}};
    return r;
}

Result cmd_sing(const Options& o) {
    const FoliationParams p = o.params();
    const auto pts = p.alpha_norm() == 0.0 ? closed_form_sing(p.n, p.d) : track_singularities(p, o.cfg);
    Result r;
    r.payload = Json{{"count", pts.size()}, {"points", pts}};
    Csv csv;
    csv.header = {"m"};
    complex_header(csv.header, "x", p.n);
    csv.header.insert(csv.header.end(), {"residual", "converged", "newton_iters"});
    for (const auto& s : pts) {
        std::vector<std::string> row{std::to_string(s.m)};
        complex_cells(row, to_vector(s.coords));
        row.insert(row.end(), {fmt(s.residual), s.converged ? "true" : "false", std::to_string(s.newton_iters)});
        csv.rows.push_back(std::move(row));
    }
    r.csv = std::move(csv);
    return r;
}

Result cmd_spectrum(const Options& o) {
    const FoliationParams p = o.params();
    const auto pts = track_singularities(p, o.cfg);
    const PolyVectorField f = family_field(p);
    std::optional<int> only;
    if (!o.m.empty() && o.m != "all") only = std::stoi(o.m);

    Result r;
    Json items = Json::array();
    Csv csv;
    csv.header = {"m"};
    complex_header(csv.header, "sigma", p.n);
    complex_header(csv.header, "lambda", p.n);
    csv.header.insert(csv.header.end(), {"classification", "c_min", "resonant", "closed_form_error"});
    for (const auto& pt : pts) {
        if (only && pt.m != *only) continue;
        const SpectrumReport rep = spectrum_at(f, pt, o.cfg);
        const CharCoeffs closed = char_poly_closed(p.n, p.d, pt.coords);
        double err = 0.0;
        for (std::size_t i = 0; i < closed.size(); ++i) err = std::max(err, std::abs(closed[i] - rep.sigma[i]));
        Json j = rep;
        j["closed_form_error"] = err;
        items.push_back(std::move(j));

        std::vector<std::string> row{std::to_string(rep.m)};
        complex_cells(row, rep.sigma);
        complex_cells(row, rep.eigenvalues);
        row.insert(row.end(), {std::string(to_string(rep.classification)), fmt(rep.divisor.c_min),
                               rep.divisor.resonant ? "true" : "false", fmt(err)});
        csv.rows.push_back(std::move(row));
    }
    if (only && items.empty()) throw InputError("--m must lie in [1, N]");
    r.payload = Json{{"spectra", items}};
    r.csv = std::move(csv);
    r.warnings.push_back("linearizable_truncated is a finite-order small-divisor check at (delta=" +
                         fmt(o.cfg.delta) + ", max_order=" + std::to_string(o.cfg.max_order) +
                         "), not a proof of the Diophantine condition");
    return r;
}

Result cmd_submersion(const Options& o) {
    validate_degree(o.n, o.d);
    const FdStencil stencil = o.stencil == "cauchy" ? FdStencil::cauchy : FdStencil::central;
    std::vector<SubmersionReport> reps;
    if (o.m.empty() || o.m == "all") {
        reps = submersion_all(o.n, o.d, o.cfg, stencil);
    } else {
        reps.push_back(submersion_report(o.n, o.d, std::stoll(o.m), o.cfg, stencil));
    }
    Result r;
    r.payload = Json{{"reports", reps}, {"expected_modulus", expected_det_modulus(o.n, o.d)}};
    Csv csv{{"m", "abs_det", "expected_modulus", "rel_error", "rank_certified"}, {}};
    for (const auto& rep : reps) {
        csv.rows.push_back({std::to_string(rep.m), fmt(std::abs(rep.det)), fmt(rep.expected_modulus),
                            fmt(rep.rel_error), rep.rank_certified ? "true" : "false"});
        if (!(rep.rel_error < 1e-4) || !rep.rank_certified) {
            r.exit_code = kVerificationFailed;
            r.warnings.push_back("m=" + std::to_string(rep.m) + ": rel_error " + fmt(rep.rel_error) +
                                 (rep.rank_certified ? "" : ", rank not certified"));
        }
    }
    r.csv = std::move(csv);
    return r;
}

Result cmd_derivs(const Options& o) {
    const auto table = sigma_derivative_check(o.n, o.d, o.cfg);
    Result r;
    r.payload = Json{{"entries", table}};
    Csv csv{{"i", "j", "fd_re", "fd_im", "formula", "rel_error"}, {}};
    for (const auto& e : table) {
        csv.rows.push_back({std::to_string(e.i), std::to_string(e.j), fmt(e.fd.real()), fmt(e.fd.imag()),
                            e.formula ? fmt(*e.formula) : "", e.formula ? fmt(e.rel_error) : ""});
    }
    r.csv = std::move(csv);
    return r;
}

Result cmd_align(const Options& o) {
    if (o.d < 2) throw InputError("d ≥ 2 required: any two points are aligned");
    const FoliationParams p = o.params();
    const auto pts = p.alpha_norm() == 0.0 ? closed_form_sing(p.n, p.d) : track_singularities(p, o.cfg);
    const auto records = alignment_census(pts, p.d, o.cfg);
    const Counts c = counts(p.n, p.d);

    Result r;
    Json recs = Json::array();
    Csv csv{{"record", "indices", "residual", "group_power"}, {}};
    std::vector<int> q;
    if (p.n % 2 == 1) q = q_pattern_indices(p.n, p.d);
    for (std::size_t k = 0; k < records.size(); ++k) {
        Json j = records[k];
        std::optional<std::int64_t> power;
        if (!q.empty()) power = translation_power(q, records[k].indices, c.N);
        j["group_power"] = power ? Json(*power) : Json(nullptr);
        recs.push_back(std::move(j));
        std::string idx;
        for (std::size_t i = 0; i < records[k].indices.size(); ++i)
            idx += (i ? " " : "") + std::to_string(records[k].indices[i]);
        csv.rows.push_back({std::to_string(k + 1), idx, fmt(records[k].residual), power ? std::to_string(*power) : ""});
    }
    r.payload = Json{{"records", recs}, {"count", records.size()}, {"expected_at_alpha0", c.K}};
    r.csv = std::move(csv);
    return r;
}

Result cmd_hyperplanes(const Options& o) {
    const HyperplaneSet hs = hyperplane_set(o.n, o.d, o.cfg);
    Result r;
    r.payload = hs;
    Csv csv;
    csv.header = {"image", "group_power"};
    complex_header(csv.header, "normal", o.n);
    for (std::size_t k = 0; k < hs.images.size(); ++k) {
        std::vector<std::string> row{std::to_string(k + 1), std::to_string(hs.group_powers[k])};
        complex_cells(row, hs.images[k]);
        csv.rows.push_back(std::move(row));
    }
    r.csv = std::move(csv);
    return r;
}

Result cmd_defect(const Options& o) {
    if (o.nu.empty()) throw InputError("--nu is required (one re,im pair per coordinate)");
    std::pair<int, int> coords{-1, -1};
    if (!o.coords.empty()) {
        if (o.coords.size() != 2) throw InputError("--coords takes two 1-based coordinate indices");
        coords = {o.coords[0] - 1, o.coords[1] - 1};
    }
    const DefectResult dr =
        defect_experiment(o.n, o.d, parse_complex_list(o.nu), o.mu, o.cfg, coords, o.power);
    Result r;
    r.payload = dr;
    Csv csv{{"mu", "defect"}, {}};
    for (std::size_t k = 0; k < dr.mu.size(); ++k) csv.rows.push_back({fmt(dr.mu[k]), fmt(dr.defect[k])});
    r.csv = std::move(csv);
    if (dr.persistent_alignment)
        r.warnings.push_back("defect stays at rounding level: the points remain aligned along this direction");
    return r;
}

Result cmd_pushforward(const Options& o) {
    const FoliationParams p = o.params();
    const GroupElement g = group_power(p.n, p.d, o.power);
    const PushforwardFactor f = pushforward_factor(g, p);
    const auto alpha = p.alpha_or_zero();

    // Two closed forms for alpha_tilde, reported for comparison only.
    const std::int64_t big_n = g.order;
    std::vector<Complex> statement(alpha.size());
    std::vector<Complex> proof(alpha.size());
    for (int i = 0; i < p.n; ++i) {
        const std::int64_t w = g.weights[static_cast<std::size_t>(i)];
        statement[static_cast<std::size_t>(i)] = unit_root(w - p.d * g.power, big_n) * alpha[static_cast<std::size_t>(i)];
        std::int64_t e = 0;
        for (int s = 2; s <= p.n - i; ++s) e += ipow_int(p.d, s);
        proof[static_cast<std::size_t>(i)] = unit_root(mod_floor(e, big_n) * g.power, big_n) * alpha[static_cast<std::size_t>(i)];
    }
    auto differs = [&](const std::vector<Complex>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(v[i] - f.alpha_tilde[i]) > 1e-12) return true;
        return false;
    };

    // Induced permutation of the unperturbed zeros: p_m -> p_{m+k}.
    const auto pts = closed_form_sing(p.n, p.d);
    std::vector<int> perm;
    for (const auto& s : pts) perm.push_back(match_index(pts, g.apply(s.coords), 1e-9));

    Result r;
    Json factor = f;
    factor["alpha_tilde_statement_form"] = Json::array();
    factor["alpha_tilde_proof_form"] = Json::array();
    for (int i = 0; i < p.n; ++i) {
        factor["alpha_tilde_statement_form"].push_back(complex_to_json(statement[static_cast<std::size_t>(i)]));
        factor["alpha_tilde_proof_form"].push_back(complex_to_json(proof[static_cast<std::size_t>(i)]));
    }
    r.payload = Json{{"element", g}, {"factor", factor}, {"permutation_alpha0", perm}};
    if (differs(statement))
        r.warnings.push_back("factored alpha_tilde differs from xi^{-d} phi(alpha)");
    if (differs(proof))
        r.warnings.push_back("factored alpha_tilde differs from the diagonal-exponent form");
    return r;
}

Result cmd_sample(const Options& o) {
    const GenericityStats st = genericity_sample(o.n, o.d, o.cfg);
    Result r;
    r.payload = st;
    r.payload["note"] =
        "Monte Carlo fractions over a uniform polydisk sample are property-based stand-ins for the "
        "full-measure genericity statement; the resonance test is truncated at max_order.";
    r.csv = Csv{{"samples", "successes", "tracking_failures", "all_hyperbolic_fraction", "any_resonant_fraction",
                 "min_c_min"},
                {{std::to_string(st.samples), std::to_string(st.successes), std::to_string(st.tracking_failures),
                  fmt(st.all_hyperbolic_fraction), fmt(st.any_resonant_fraction), fmt(st.min_c_min)}}};
    r.warnings.push_back("sample statistics are stand-ins for a measure-theoretic statement");
    return r;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical laboratory for the perturbed Jouanolou foliations X_alpha on P^n"};
    app.require_subcommand(1);
    Options o;

    struct Command {
        CLI::App* app;
        std::function<Result(const Options&)> fn;
    };
    std::vector<Command> commands;
    auto add = [&](const char* name, const char* help, bool alpha, std::function<Result(const Options&)> fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, o, alpha);
        commands.push_back({sub, std::move(fn)});
        return sub;
    };

    add("counts", "N (singular points), M (space dimension), K (aligned sets). CSV: N,M,K", false, cmd_counts);
    add("sing", "singular points of X_alpha. CSV: m, x<i>_re, x<i>_im, residual, converged, newton_iters", true,
        cmd_sing);
    add("spectrum",
        "characteristic coefficients, eigenvalues, classification, small divisors. "
        "CSV: m, sigma<i>_re/_im, lambda<i>_re/_im, classification, c_min, resonant, closed_form_error",
        true, cmd_spectrum)
        ->add_option("--m", o.m, "single index (default: all)");
    auto* sub = add("submersion",
                    "finite-difference Jacobian of alpha -> sigma at 0. "
                    "CSV: m, abs_det, expected_modulus, rel_error, rank_certified",
                    false, cmd_submersion);
    sub->add_option("--m", o.m, "index in [1, N] or 'all' (default)");
    sub->add_option("--stencil", o.stencil, "central or cauchy")->check(CLI::IsMember({"central", "cauchy"}));
    add("derivs", "explicit d sigma/d alpha table at p_N vs finite differences. CSV: i, j, fd_re, fd_im, formula, rel_error",
        false, cmd_derivs);
    add("align", "census of aligned (d+1)-subsets of singular points. CSV: record, indices, residual, group_power",
        true, cmd_align);
    add("hyperplanes", "base hyperplane normal and its group images. CSV: image, group_power, normal<i>_re/_im",
        false, cmd_hyperplanes);
    sub = add("defect", "alignment defect of an aligned set under alpha = mu nu. CSV: mu, defect", false, cmd_defect);
    sub->add_option("--nu", o.nu, "direction, one re,im pair per coordinate");
    sub->add_option("--mu", o.mu, "mu grid")->delimiter(',');
    sub->add_option("--coords", o.coords, "two 1-based coordinates for the 2x2 defect")->delimiter(',');
    sub->add_option("--record", o.power, "group power k selecting the aligned set g^k{q_j}");
    o.power = 1;
    sub = add("pushforward", "factor g_* X_alpha back into the family (JSON only)", true, cmd_pushforward);
    sub->add_option("--k", o.power, "generator power");
    add("sample", "Monte Carlo genericity sample. CSV: one summary row", false, cmd_sample);

    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        // Subcommand help arrives as a ParseError subclass with exit code 0.
        if (e.get_exit_code() == 0) {
            for (const auto& c : commands)
                if (c.app->parsed()) {
                    out << c.app->help();
                    return kOk;
                }
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    for (const auto& c : commands) {
        if (!c.app->parsed()) continue;
        const std::string name = c.app->get_name();
        if (name == "defect" && o.power == 1 && c.app->count("--record") == 0) o.power = 0;
        try {
            o.cfg.validate();
            Result res = c.fn(o);
            if (o.format == "csv") {
                if (!res.csv) throw InputError(name + " has no tabular form; use --format json");
                out << res.csv->str();
            } else {
                Report rep;
                rep.params.n = o.n;
                rep.params.d = o.d;
                rep.params.alpha = parse_complex_list(o.alpha);
                rep.cfg = o.cfg;
                rep.payload = std::move(res.payload);
                rep.warnings = std::move(res.warnings);
                out << Json(rep).dump(2) << '\n';
            }
            return res.exit_code;
        } catch (const InputError& e) {
            err << "error: " << e.what() << '\n';
            return kInvalidInput;
        } catch (const VerificationError& e) {
            err << "verification failed: " << e.what() << '\n';
            return kVerificationFailed;
        } catch (const StructuralError& e) {
            err << "verification failed: " << e.what() << '\n';
            return kVerificationFailed;
        } catch (const NumericalError& e) {
            err << "numerical failure: " << e.what() << '\n';
            return kNonConvergence;
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << '\n';
            return kInvalidInput;
        } catch (const std::out_of_range& e) {
            err << "error: " << e.what() << '\n';
            return kInvalidInput;
        }
    }
    return kInvalidInput;
}

}  // namespace jlab::cli
