// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "jlab/errors.hpp"
#include "jlab/genericity.hpp"

using namespace jlab;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

const std::vector<std::pair<int, int>>& desk_grid() {
    static const std::vector<std::pair<int, int>> grid = [] {
        std::vector<std::pair<int, int>> g;
        for (int n = 2; n <= 4; ++n)
            for (int d = 1; d <= 3; ++d) g.emplace_back(n, d);
        return g;
    }();
    return grid;
}

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::vector<std::vector<Complex>> random_alphas(int n, int count, std::uint64_t seed) {
    RunConfig cfg;
    cfg.samples = count;
    cfg.seed = seed;
    return sample_polydisk(n, cfg);
}

std::string key(int n, int d) { return "(" + std::to_string(n) + "," + std::to_string(d) + ")"; }

void c1_census(Verdict& v) {
    for (auto [n, d] : desk_grid()) {
        const auto pts = closed_form_sing(n, d);
        const auto f = jouanolou_field(n, d);
        v.require(static_cast<std::int64_t>(pts.size()) == counts(n, d).N, key(n, d) + " wrong count");
        double worst = 0, min_gap = 1e300;
        for (std::size_t a = 0; a < pts.size(); ++a) {
            worst = std::max(worst, inf_norm(eval_field(f, pts[a].coords)));
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                min_gap = std::min(min_gap, (pts[a].coords - pts[b].coords).norm());
        }
        v.require(worst < 1e-12, key(n, d) + " residual " + std::to_string(worst));
        v.require(min_gap > 1e-6, key(n, d) + " coincident points");
    }
    v.require(closed_form_sing(2, 2).size() == 7 && closed_form_sing(3, 2).size() == 15 &&
                  closed_form_sing(3, 3).size() == 40,
              "spot counts");
    if (v.pass) v.detail << "N points, pairwise distinct, residual < 1e-12 on the desk grid";
}

void c2_charpoly(Verdict& v) {
    RunConfig cfg;
    cfg.jobs = jobs();
    double worst = 0;
    for (auto [n, d] : desk_grid()) {
        for (const auto& alpha : random_alphas(n, 100, 1000 + 10 * n + d)) {
            const FoliationParams p{n, d, alpha};
            const auto f = family_field(p);
            for (const auto& s : track_singularities(p, cfg)) {
                const CharCoeffs a = char_poly_closed(n, d, s.coords);
                const CharCoeffs b = char_poly_direct(f, s.coords);
                for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
            }
        }
    }
    v.require(worst < 1e-10, "max error " + std::to_string(worst));
    v.detail << (v.pass ? "" : "; ") << "max coefficient error " << worst;
}

void c3_submersion(Verdict& v) {
    RunConfig cfg;
    cfg.fd_step = 1e-5;
    cfg.jobs = jobs();
    for (auto [n, d] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        double worst = 0;
        bool ranks = true;
        for (const auto& r : submersion_all(n, d, cfg)) {
            worst = std::max(worst, r.rel_error);
            ranks = ranks && r.rank_certified;
        }
        v.require(worst < 1e-4, key(n, d) + " rel_error " + std::to_string(worst));
        v.require(ranks, key(n, d) + " rank not certified");
        v.detail << key(n, d) << " |det|=" << expected_det_modulus(n, d) << " rel " << worst << " ";
    }
}

void c4_derivs(Verdict& v) {
    RunConfig cfg;
    double worst = 0;
    for (auto [n, d] : desk_grid())
        for (const auto& e : sigma_derivative_check(n, d, cfg))
            if (e.formula) worst = std::max(worst, e.rel_error);
    v.require(worst < 1e-4, "rel_error " + std::to_string(worst));
    const double expected[2][2] = {{8.0 / 7, 16.0 / 7}, {0.0, 8.0}};
    for (const auto& e : sigma_derivative_check(2, 2, cfg))
        v.require(std::abs(e.fd - expected[e.i - 1][e.j - 1]) < 1e-6, "(2,2) table entry");
    v.detail << (v.pass ? "" : "; ") << "worst rel_error " << worst << "; (2,2) = [[8/7, 16/7], [0, 8]]";
}

void c5_first_order(Verdict& v) {
    RunConfig cfg;
    cfg.jobs = jobs();
    double lo = 1e300, hi = 0;
    std::mt19937_64 rng(55);
    std::normal_distribution<double> g;
    for (auto [n, d] : desk_grid()) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Complex> dir;
            double norm = 0;
            for (int i = 0; i < n; ++i) {
                dir.emplace_back(g(rng), g(rng));
                norm = std::max(norm, std::abs(dir.back()));
            }
            auto err = [&](double s) {
                std::vector<Complex> a;
                for (const auto& z : dir) a.push_back(z * (s / norm));
                double e = 0;
                for (const auto& p : track_singularities({n, d, a}, cfg))
                    e = std::max(e, (p.coords - first_order_point(n, d, p.m, a)).norm());
                return e;
            };
            const double ratio = err(1e-2) / err(5e-3);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    v.require(lo >= 3.5 && hi <= 4.5, "ratio out of [3.5, 4.5]");
    v.detail << (v.pass ? "" : ": ") << "Richardson ratios in [" << lo << ", " << hi << "]";
}

void c6_alignment(Verdict& v) {
    RunConfig cfg;
    for (auto [n, d] : {std::pair{2, 2}, {2, 3}, {4, 2}}) {
        const auto recs = alignment_census(closed_form_sing(n, d), d, cfg);
        v.require(recs.empty(), key(n, d) + " has " + std::to_string(recs.size()) + " records");
    }
    for (auto [n, d, k] : {std::tuple{3, 2, 5}, {3, 3, 10}, {5, 2, 21}}) {
        const auto recs = alignment_census(closed_form_sing(n, d), d, cfg);
        v.require(static_cast<int>(recs.size()) == k, key(n, d) + " has " + std::to_string(recs.size()) + " records");
        const auto q = q_pattern_indices(n, d);
        for (const auto& r : recs) {
            v.require(static_cast<int>(r.indices.size()) == d + 1, key(n, d) + " record size");
            v.require(translation_power(q, r.indices, counts(n, d).N).has_value(), key(n, d) + " not a q-translate");
        }
        v.detail << key(n, d) << ":" << recs.size() << " ";
    }
}

void c7_defect(Verdict& v) {
    RunConfig cfg;
    const std::vector<double> mu{1e-2, 3e-3, 1e-3, 3e-4};
    const auto in_h = defect_experiment(3, 2, {1.0, 0.0, 0.0}, mu, cfg);
    const auto off_h = defect_experiment(3, 2, {0.0, 1.0, 0.0}, mu, cfg);
    const bool in_ok = !std::isnan(in_h.slope) && in_h.slope >= 1.8 && in_h.slope <= 2.2;
    const bool off_ok = off_h.slope >= 0.8 && off_h.slope <= 1.2;
    v.require(in_ok, "nu=(1,0,0) slope " + (std::isnan(in_h.slope) ? std::string("undefined") : std::to_string(in_h.slope)) +
                         (in_h.persistent_alignment ? " (defect at rounding level: set stays aligned)" : ""));
    v.require(off_ok, "nu=(0,1,0) slope " + std::to_string(off_h.slope));
    double max_in = 0;
    for (double x : in_h.defect) max_in = std::max(max_in, x);
    v.detail << (v.pass ? "" : " | ") << "in H max defect " << max_in << ", off H slope " << off_h.slope;
}

void c8_group(Verdict& v) {
    RunConfig cfg;
    cfg.jobs = jobs();
    double worst = 0;
    for (auto [n, d] : desk_grid()) {
        const auto elements = group_elements(n, d);
        for (const auto& alpha : random_alphas(n, 10, 800 + 10 * n + d)) {
            const FoliationParams p{n, d, alpha};
            const auto pts = track_singularities(p, cfg);
            for (const auto& g : elements) {
                const auto f = pushforward_factor(g, p);
                worst = std::max(worst, f.residual);
                const auto image = track_singularities({n, d, f.alpha_tilde}, cfg);
                std::set<int> hit;
                for (const auto& s : pts) hit.insert(match_index(image, g.apply(s.coords), 1e-8));
                if (hit.size() != pts.size() || hit.count(0)) {
                    v.require(false, key(n, d) + " power " + std::to_string(g.power) + " not a bijection");
                    return;
                }
            }
        }
    }
    v.require(worst < 1e-12, "residual " + std::to_string(worst));
    const auto pts = closed_form_sing(2, 2);
    const GroupElement g = group_generator(2, 2);
    int idx = 1, len = 0;
    do {
        idx = match_index(pts, g.apply(pts[static_cast<std::size_t>(idx - 1)].coords), 1e-12);
        ++len;
    } while (idx != 1 && idx != 0 && len <= 7);
    v.require(len == 7 && idx == 1, "(2,2) generator is not a 7-cycle");
    v.detail << (v.pass ? "" : "; ") << "max residual " << worst << ", (2,2) generator cycle length " << len;
}

void c9_genericity(Verdict& v) {
    RunConfig cfg;
    cfg.samples = 1000;
    cfg.radius = 0.05;
    cfg.max_order = 6;
    cfg.delta = 1.0;
    cfg.jobs = jobs();
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}}) {
        const auto st = genericity_sample(n, d, cfg);
        v.require(st.successes == st.samples, key(n, d) + " tracking failures " + std::to_string(st.tracking_failures));
        v.require(st.all_hyperbolic_fraction >= 0.99, key(n, d) + " hyperbolic fraction");
        v.require(st.any_resonant_fraction <= 0.01, key(n, d) + " resonant fraction");
        v.detail << key(n, d) << " success " << st.success_fraction << " hyperbolic " << st.all_hyperbolic_fraction
                 << " resonant " << st.any_resonant_fraction << " ";
    }
    v.detail << "(thresholds are property-based stand-ins for the full-measure statement)";
}

void c10_spot(Verdict& v) {
    RunConfig cfg;
    const auto pts = closed_form_sing(2, 2);
    const SpectrumReport r = spectrum_at(jouanolou_field(2, 2), pts.back(), cfg);
    const Complex a(-2, std::sqrt(3.0)), b(-2, -std::sqrt(3.0));
    double err = std::max(std::min(std::abs(r.eigenvalues[0] - a), std::abs(r.eigenvalues[0] - b)),
                          std::min(std::abs(r.eigenvalues[1] - a), std::abs(r.eigenvalues[1] - b)));
    err = std::max(err, std::abs(std::abs(r.eigenvalues[0] - r.eigenvalues[1]) - 2 * std::sqrt(3.0)));
    v.require(err < 1e-10, "eigenvalue error " + std::to_string(err));
    v.require(r.classification == Classification::hyperbolic, "classification " + std::string(to_string(r.classification)));
    v.detail << (v.pass ? "" : "; ") << "-2 +- i sqrt3 to " << err << ", " << to_string(r.classification);
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
        {"singularity census", c1_census},
        {"characteristic polynomial oracle equivalence", c2_charpoly},
        {"submersion determinant", c3_submersion},
        {"explicit derivative table", c4_derivs},
        {"first-order expansion", c5_first_order},
        {"alignment parity law", c6_alignment},
        {"defect dichotomy", c7_defect},
        {"group symmetry", c8_group},
        {"Monte Carlo genericity", c9_genericity},
        {"spot eigenvalues", c10_spot},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !v.pass;
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    v.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
