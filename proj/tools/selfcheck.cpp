#include "cli.hpp"

#include "aqrm/correlations.hpp"
#include "aqrm/dme.hpp"
#include "aqrm/spectrum.hpp"
#include "aqrm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace aqrm::cli {

namespace {

void report(std::ostream& out, bool ok, const char* name, double measured, double bound) {
    out << (ok ? "PASS " : "FAIL ") << name << " max_err=" << format_double(measured)
        << " bound=" << format_double(bound) << '\n';
}

// Resonant JCM: ground -1/2 plus doublets (n + 1/2) +- g sqrt(n + 1).
std::vector<double> jcm_levels(double g, int count) {
    std::vector<double> e{-0.5};
    for (int n = 0; n < count; ++n) {
        const double split = g * std::sqrt(n + 1.0);
        e.push_back(n + 0.5 - split);
        e.push_back(n + 0.5 + split);
    }
    std::sort(e.begin(), e.end());
    e.resize(count);
    return e;
}

bool check_jcm(std::ostream& out) {
    double worst = 0.0;
    for (double g : {0.1, 0.3, 0.7}) {
        ModelParams p;
        p.g = g;
        p.r = 0.0;
        const EigenSystem eig = converge_truncation(p, 10, 1e-12);
        const auto expected = jcm_levels(g, 10);
        for (int k = 0; k < 10; ++k) worst = std::max(worst, std::abs(eig.energies[k] - expected[k]));
    }
    const bool ok = worst < 1e-10;
    report(out, ok, "jcm_spectrum", worst, 1e-10);
    return ok;
}

bool check_gibbs(std::ostream& out) {
    struct Point {
        double g, r, t;
    };
    double worst = 0.0;
    for (const Point pt : {Point{0.4, 0.3, 0.07}, Point{1.1, 0.5, 0.12}, Point{1.8, 0.9, 0.2}, Point{0.9, 0.0, 0.03}}) {
        ModelParams p;
        p.g = pt.g;
        p.r = pt.r;
        BathParams bath;
        bath.temp_q = bath.temp_c = pt.t;
        const EigenSystem eig = converge_truncation(p, 20, 1e-10);
        const PopulationVector pop = steady_state(build_generator(transition_rates(eig, bath), bath));
        double z = 0.0;
        for (double e : eig.energies) z += std::exp(-(e - eig.energies[0]) / pt.t);
        for (int k = 0; k < eig.levels(); ++k) {
            const double gibbs = std::exp(-(eig.energies[k] - eig.energies[0]) / pt.t) / z;
            worst = std::max(worst, std::abs(pop[k] - gibbs));
        }
    }
    const bool ok = worst < 1e-10;
    report(out, ok, "gibbs_steady_state", worst, 1e-10);
    return ok;
}

bool check_selection_rule(std::ostream& out) {
    ModelParams p;
    p.g = 1.3;
    p.r = 0.4;
    BathParams bath;
    const EigenSystem eig = converge_truncation(p, 20, 1e-10);
    const RateSet rates = transition_rates(eig, bath);
    const XOperator x = x_plus(eig);
    double worst = 0.0;
    for (const Transition& t : rates.transitions) {
        if (eig.parities[t.lower] != eig.parities[t.upper]) continue;
        worst = std::max({worst, t.gamma_q, t.gamma_c, std::abs(x.amplitude(t.lower, t.upper))});
    }
    worst = std::max(worst, x.amplitude.col(0).norm());
    const bool ok = worst < 1e-12;
    report(out, ok, "selection_rule", worst, 1e-12);
    return ok;
}

} // namespace

bool run_selfcheck(std::ostream& out) {
    bool ok = true;
    ok &= check_jcm(out);
    ok &= check_gibbs(out);
    ok &= check_selection_rule(out);
    out << (ok ? "selfcheck passed\n" : "selfcheck FAILED\n");
    return ok;
}

} // namespace aqrm::cli
