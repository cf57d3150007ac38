// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "fidbound/cli/cli.hpp"
#include "fidbound/states.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace fidbound;
using oracle::Measure;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Outcome {
    bool pass;
    std::string detail;
};

// One unit in the last printed digit of "0.0794" or "5.85e-4".
double last_digit_unit(const std::string &printed) {
    const auto e = printed.find('e');
    const std::string mantissa = printed.substr(0, e);
    const int exponent = e == std::string::npos ? 0 : std::stoi(printed.substr(e + 1));
    const auto dot = mantissa.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
    return std::pow(10.0, exponent - decimals);
}

Outcome table1() {
    const std::vector<std::vector<std::string>> printed{
        {"0.420", "0.288", "0.220", "0.18", "0.146"},
        {"0.0794", "0.0263", "0.0201", "0.016", "0.0066"},
        {"0", "0", "0", "0", "0"},
        {"0.00540", "0.00122", "0.00073", "0.00049", "0.00016"},
        {"0.420", "0.288", "0.220", "0.18", "0.146"},
        {"5.85e-4", "7.14e-5", "4.29e-5", "2.9e-5", "4.86e-6"},
        {"0.0106", "0.00165", "0.00102", "7.1e-4", "1.41e-4"},
    };
    const auto start = Clock::now();
    const auto rows = cli::table1_rows();
    const double elapsed = seconds_since(start);
    int matched = 0;
    double worst = 0;
    std::string first_miss;
    for (std::size_t r = 0; r < printed.size(); ++r)
        for (std::size_t c = 0; c < printed[r].size(); ++c) {
            const double target = std::stod(printed[r][c]);
            const double got = rows[r].values[c];
            const bool ok = printed[r][c] == "0" ? got == 0.0 : std::abs(got - target) <= last_digit_unit(printed[r][c]) * (1 + 1e-9);
            if (printed[r][c] != "0") worst = std::max(worst, std::abs(got - target) / last_digit_unit(printed[r][c]));
            if (ok)
                ++matched;
            else if (first_miss.empty())
                first_miss = rows[r].measure + "[" + std::to_string(c) + "]=" + std::to_string(got);
        }
    std::ostringstream d;
    d << matched << "/35 entries, worst " << worst << " last-digit units, " << elapsed << " s";
    if (!first_miss.empty()) d << ", first miss " << first_miss;
    return {matched == 35 && elapsed < 1.0, d.str()};
}

Outcome ghz_diagonal_equality() {
    auto rng = sampling::stream(2024, 0);
    const auto basis = states::ghz_basis(3);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto probs = sampling::random_probabilities(8, rng);
        const auto rho = states::ghz_diagonal(probs);
        const auto best = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        const auto &phi = basis[best];
        const auto report = gme_bounds(rho, phi, profile_phi(phi));
        worst = std::max(worst, std::abs(report.cren.value - oracle::ghz_diagonal_analytic(probs)));
    }
    return {worst <= 1e-12, "200 states, max deviation " + num(worst)};
}

Outcome w_noise_curve() {
    const auto w = states::w_state(3);
    const auto profile = profile_phi(w);
    double worst = std::abs(profile.s1_prime - 2.0 / 3.0);
    bool zero_below = true;
    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const double got = gme_bounds(states::white_noise_mix(w, p), w, profile).cren.value;
        const double closed = std::max(((7 * p + 1) / 8) / (2.0 / 3.0) - 1, 0.0);
        worst = std::max(worst, std::abs(got - closed));
        if (p <= 13.0 / 21.0 && got != 0.0) zero_below = false;
    }
    const double at_one = gme_bounds(states::white_noise_mix(w, 1.0), w, profile).cren.value;
    const bool ok = worst <= 1e-12 && zero_below && std::abs(at_one - 0.5) <= 1e-12;
    return {ok, "max deviation " + num(worst) + ", zero for p<=13/21: " + (zero_below ? "yes" : "no") +
                    ", p=1 -> " + num(at_one)};
}

Outcome cluster_series() {
    bool halves = true;
    double n12_time = 0;
    for (int n = 2; n <= 12; ++n) {
        const auto start = Clock::now();
        const auto profile = profile_phi(states::linear_cluster(n));
        if (n == 12) n12_time = seconds_since(start);
        halves = halves && std::abs(profile.s1_prime - 0.5) <= 1e-12;
    }
    double worst = 0;
    double n4 = 0, n12 = 0;
    for (const auto &row : cli::fig4_rows()) {
        worst = std::max(worst, std::abs(row.report.cren.value - (2 * row.fidelity_lower_bound - 1)));
        if (row.qubits == 4) n4 = row.report.cren.value;
        if (row.qubits == 12) n12 = row.report.cren.value;
    }
    const bool ok = halves && n12_time < 60 && worst <= 1e-12 && std::abs(n4 - 0.8352) <= 1e-12 &&
                    std::abs(n12 - 0.1088) <= 1e-12;
    std::ostringstream d;
    d << "s1'=1/2 for N=2..12: " << (halves ? "yes" : "no") << ", N=12 scan " << n12_time << " s, N=4 -> " << n4
      << ", N=12 -> " << n12;
    return {ok, d.str()};
}

Outcome validity_pure() {
    auto rng = sampling::stream(7, 0);
    int violations = 0;
    double worst_gap = -1;
    for (int i = 0; i < 1000; ++i) {
        const Dims dims(static_cast<std::size_t>(i % 2 ? 4 : 3), 2);
        const auto psi = sampling::haar_pure_state(dims, rng);
        const auto rho = DensityOperator::pure(psi);
        const auto gme = gme_bounds(rho, psi, profile_phi(psi));
        const auto coh = coherence_bounds(rho, psi, ReferenceBasis::computational(psi.dimension()));
        const std::pair<double, Measure> checks[] = {
            {gme.cren.value, Measure::Cren},
            {gme.concurrence.value, Measure::Concurrence},
            {gme.gconcurrence.value, Measure::GConcurrence},
            {gme.geometric.value, Measure::GeometricEntanglement},
            {coh.l1.value, Measure::L1Coherence},
            {coh.geometric.value, Measure::GeometricCoherence},
            {coh.formation.value, Measure::CoherenceOfFormation},
        };
        for (const auto &[bound, measure] : checks) {
            const double gap = bound - oracle::measure_pure(psi, measure, ReferenceBasis::computational(psi.dimension()));
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-9) ++violations;
        }
    }
    return {violations == 0, "1000 states x 7 bounds, violations " + std::to_string(violations) +
                                 ", max(bound - exact) " + num(worst_gap)};
}

Outcome sandwich_mixed() {
    auto rng = sampling::stream(11, 0);
    std::uniform_int_distribution<int> rank_dist(1, 4);
    const auto start = Clock::now();
    int violations = 0;
    double worst_gap = -1;
    for (int i = 0; i < 100; ++i) {
        const auto rho = sampling::random_density({2, 2, 2}, rank_dist(rng), rng);
        // phi = dominant eigenvector of rho.
        Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(rho.matrix());
        const PureState phi(rho.dims(), es.eigenvectors().col(es.eigenvalues().size() - 1));
        const auto gme = gme_bounds(rho, phi, profile_phi(phi));
        const auto coh = coherence_bounds(rho, phi, ReferenceBasis::computational(8));
        const std::pair<double, Measure> checks[] = {
            {gme.cren.value, Measure::Cren},
            {gme.concurrence.value, Measure::Concurrence},
            {gme.gconcurrence.value, Measure::GConcurrence},
            {gme.geometric.value, Measure::GeometricEntanglement},
            {coh.l1.value, Measure::L1Coherence},
            {coh.geometric.value, Measure::GeometricCoherence},
            {coh.formation.value, Measure::CoherenceOfFormation},
        };
        oracle::RoofOptions options;
        options.trials = 200;
        options.seed = static_cast<std::uint64_t>(i);
        for (const auto &[bound, measure] : checks) {
            const double gap = bound - oracle::convex_roof_upper(rho, measure, options);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-9) ++violations;
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream d;
    d << "100 states x 7 bounds, violations " << violations << ", max(bound - roof) " << worst_gap << ", " << elapsed
      << " s";
    return {violations == 0 && elapsed < 300, d.str()};
}

Outcome endpoints() {
    bool gamma_exact = true;
    for (int m = 2; m <= 1024; ++m)
        gamma_exact = gamma_exact && gamma(1.0, m) == 1.0 && gamma(static_cast<double>(m), m) == 1.0 / m;
    double worst = 0;
    std::vector<long> ms{3};
    for (long m = 4; m <= 1024; m *= 2) ms.push_back(m);
    for (long m : ms) {
        const double mr = static_cast<double>(m);
        const double point = 4 * (mr - 1) / mr;
        const double g = gamma(point, mr);
        const double entropic = binary_entropy(g) + (1 - g) * std::log2(mr - 1);
        const double linear = (point - mr) * std::log2(mr - 1) / (mr - 2) + std::log2(mr);
        worst = std::max(worst, std::abs(entropic - linear));
        worst = std::max(worst, std::abs(formation_lb(std::nextafter(point, 0.0), m) - formation_lb(std::nextafter(point, mr), m)));
    }
    const bool h2 = binary_entropy(0.0) == 0.0 && binary_entropy(1.0) == 0.0 && binary_entropy(0.5) == 1.0;
    return {gamma_exact && worst <= 1e-9 && h2, std::string("gamma endpoints exact: ") + (gamma_exact ? "yes" : "no") +
                                                    ", branch mismatch " + num(worst) +
                                                    ", H2 endpoints: " + (h2 ? "yes" : "no")};
}

Outcome monotonicity() {
    long violations = 0, points = 0;
    auto check = [&](double now, double &prev) {
        ++points;
        if (now < prev - 1e-12) ++violations;
        prev = now;
    };
    for (int m : {2, 3, 4, 8, 16, 32, 64}) {
        double prev[4] = {0, 0, 0, 0};
        for (double s = 1.0; s <= m; s += 1e-3) {
            check(cren_lb(s), prev[0]);
            check(concurrence_lb(s, m), prev[1]);
            check(gconcurrence_lb(s, m), prev[2]);
            check(geometric_lb(s, m), prev[3]);
        }
    }
    for (double s = 1.001; s <= 2.0; s += 1e-3) {
        double prev = 0;
        for (int m = 2; m <= 64; ++m) check(gamma(s, m), prev);
    }
    for (double f = 0.05; f < 1.0; f += 0.05)
        for (int m : {2, 4, 8, 64}) {
            double prev = 0;
            for (double s1 = std::max(f, 1.0 / m); s1 <= 1.0; s1 += 1e-3) check(gamma(s_value(f, s1), m), prev);
        }
    return {violations == 0, std::to_string(points) + " grid points, violations " + std::to_string(violations)};
}

Outcome negativity_paths() {
    auto rng = sampling::stream(13, 0);
    const std::vector<Dims> shapes{{2, 2}, {2, 3}, {2, 2, 2}, {3, 3}, {2, 2, 3}, {2, 2, 2, 2}};
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        const auto &dims = shapes[static_cast<std::size_t>(i) % shapes.size()];
        const auto psi = sampling::haar_pure_state(dims, rng);
        for (const auto &cut : enumerate_bipartitions(dims))
            worst = std::max(worst, std::abs(oracle::negativity_pure_trace_norm(psi, cut) -
                                             oracle::negativity_pure_schmidt_sum(psi, cut)));
    }
    return {worst <= 1e-8, "500 states, all cuts, max disagreement " + num(worst)};
}

std::string capture(std::vector<std::string> args) {
    args.insert(args.begin(), "fidbound");
    std::vector<char *> argv;
    for (auto &a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"repro", "table1"},
        {"repro", "fig3", "--full-precision"},
        {"repro", "fig4"},
        {"bounds", "--fidelity", "0.644", "--sigma", "0.022", "--phi", "ghz:8", "--full-precision"},
        {"bounds", "--state", "wnoise:w:3:p=0.8", "--phi", "w:3"},
        {"profile", "cluster:6", "--full-precision"},
        {"verify", "--state", "wnoise:ghz:3:p=0.9", "--phi", "ghz:3", "--trials", "30", "--seed", "42",
         "--full-precision"},
        {"--workers", "3", "verify", "--state", "wnoise:ghz:3:p=0.9", "--phi", "ghz:3", "--trials", "30", "--seed",
         "42", "--full-precision"},
    };
    int identical = 0;
    std::vector<std::string> first;
    for (const auto &command : commands) {
        first.push_back(capture(command));
        if (first.back() == capture(command)) ++identical;
    }
    const bool workers_match = first[6] == first[7];
    return {identical == static_cast<int>(commands.size()) && workers_match,
            std::to_string(identical) + "/" + std::to_string(commands.size()) +
                " commands byte-identical across runs, worker count invariant: " + (workers_match ? "yes" : "no")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"table1 reproduction", table1},
        {"GHZ-diagonal equality", ghz_diagonal_equality},
        {"noisy W curve", w_noise_curve},
        {"cluster state series", cluster_series},
        {"pure-state validity", validity_pure},
        {"mixed-state sandwich", sandwich_mixed},
        {"analytic endpoints and continuity", endpoints},
        {"monotonicity grids", monotonicity},
        {"negativity dual path", negativity_paths},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome{false, ""};
        try {
            outcome = criteria[i].second();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failed;
        std::printf("[%s] %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
