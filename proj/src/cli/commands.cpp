#include "fidbound/cli/cli.hpp"
#include "fidbound/states.hpp"

#include <sstream>

namespace fidbound::cli {

BoundsResult compute_bounds(const BoundsRequest &request) {
    const PureState phi = resolve_pure(request.phi);
    double fidelity = 0;
    if (request.state) {
        if (request.fidelity) throw ValidationError(ErrorKind::Parse, "give either a state or a fidelity, not both");
        const DensityOperator rho = as_density(resolve_state(*request.state));
        if (rho.dims() != phi.dims()) throw ValidationError(ErrorKind::DimensionMismatch, "state and phi registers differ");
        fidelity = fidelity_pure(rho, phi);
    } else if (request.fidelity) {
        fidelity = *request.fidelity;
    } else {
        throw ValidationError(ErrorKind::Parse, "need a state source or a fidelity");
    }

    BoundsResult result;
    if (request.gme) {
        if (phi.parties() < 2) throw ValidationError(ErrorKind::InvalidBipartition, "GME bounds need at least two parties");
        result.profile = profile_phi(phi, {request.workers});
        result.gme = bounds_from_fidelity(fidelity, result.profile, {request.m_prime_mode, request.fidelity_sigma});
        if (request.m_prime_mode == MPrimeMode::Rank)
            result.warnings.emplace_back(
                "m' taken as the maximal Schmidt rank of phi; the bounds are only proven for the dimension-based m'");
    }
    if (request.coherence) {
        const auto basis = resolve_basis(request.basis, phi.dimension());
        result.coherence_profile = coherence_profile(phi, basis);
        result.coherence = coherence_bounds_from_fidelity(fidelity, result.coherence_profile, request.fidelity_sigma);
    }
    return result;
}

Json bounds_json(const BoundsRequest &request, const BoundsResult &result, const Format &fmt) {
    Json out;
    out["phi"] = request.phi;
    if (request.state) out["state"] = *request.state;
    out["fidelity_source"] = request.state ? "state" : "supplied";
    if (request.gme) {
        out["phi_profile"] = profile_json(result.profile, fmt, 0);
        out["phi_profile"].erase("bipartitions");
        out["gme"] = gme_report_json(result.gme, fmt);
    }
    if (request.coherence) {
        out["coherence_profile"] = coherence_profile_json(result.coherence_profile, fmt);
        out["coherence_profile"]["basis"] = request.basis;
        out["coherence"] = coherence_report_json(result.coherence, fmt);
    }
    if (!result.warnings.empty()) out["warnings"] = result.warnings;
    return out;
}

std::string bounds_csv(const BoundsRequest &request, const BoundsResult &result, const Format &fmt) {
    std::ostringstream csv;
    csv << "family,measure,value,raw,clamped\n";
    auto row = [&](const char *family, const char *measure, const BoundValue &b) {
        csv << family << ',' << measure << ',' << render(b.value, fmt) << ',' << render(b.raw, fmt) << ','
            << (b.clamped ? "true" : "false") << '\n';
    };
    if (request.gme) {
        row("gme", "cren", result.gme.cren);
        row("gme", "concurrence", result.gme.concurrence);
        row("gme", "gconcurrence", result.gme.gconcurrence);
        row("gme", "geometric", result.gme.geometric);
    }
    if (request.coherence) {
        row("coherence", "l1", result.coherence.l1);
        row("coherence", "geometric", result.coherence.geometric);
        row("coherence", "formation", result.coherence.formation);
    }
    return csv.str();
}

Json profile_command(const std::string &phi_source, int top_k, unsigned workers, const Format &fmt) {
    const PureState phi = resolve_pure(phi_source);
    Json out;
    out["phi"] = phi_source;
    out["dims"] = phi.dims();
    out["profile"] = profile_json(profile_phi(phi, {workers}), fmt, top_k);
    return out;
}

// ---------------------------------------------------------------------------
// Published inputs

const std::vector<Table1Column> &table1_columns() {
    static const std::vector<Table1Column> columns{
        {"6a", 6, 0.710}, {"8a", 8, 0.644}, {"8b", 8, 0.610}, {"8c", 8, 0.59}, {"10a", 10, 0.573}};
    return columns;
}

const std::vector<Fig4Point> &fig4_points() {
    static const std::vector<Fig4Point> points{{4, 0.9176},  {5, 0.9196},  {6, 0.8870}, {7, 0.8827}, {8, 0.8536},
                                               {9, 0.7988}, {10, 0.7136}, {11, 0.5720}, {12, 0.5544}};
    return points;
}

std::vector<Table1Row> table1_rows() {
    std::vector<Table1Row> rows{{"N_GME", {}}, {"C_GME", {}},    {"G_GME", {}}, {"Geometric_GME", {}},
                                {"C_l1", {}},  {"C_g", {}},      {"C_f", {}}};
    for (const auto &column : table1_columns()) {
        const PureState phi = states::ghz(column.photons);
        const auto gme = bounds_from_fidelity(column.fidelity, profile_phi(phi));
        const auto coh = coherence_bounds_from_fidelity(column.fidelity, coherence_profile(phi));
        const double values[] = {gme.cren.value,  gme.concurrence.value, gme.gconcurrence.value, gme.geometric.value,
                                 coh.l1.value,    coh.geometric.value,   coh.formation.value};
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].values.push_back(values[i]);
    }
    return rows;
}

std::vector<Fig4Row> fig4_rows(unsigned workers) {
    std::vector<Fig4Row> rows;
    for (const auto &point : fig4_points()) {
        auto profile = profile_phi(states::linear_cluster(point.qubits), {workers});
        auto report = bounds_from_fidelity(point.fidelity_lower_bound, profile);
        rows.push_back({point.qubits, point.fidelity_lower_bound, std::move(profile), report});
    }
    return rows;
}

namespace {

std::string table1_csv(const Format &fmt) {
    std::ostringstream csv;
    csv << "measure";
    for (const auto &column : table1_columns()) csv << ',' << column.label;
    csv << "\nfidelity";
    for (const auto &column : table1_columns()) csv << ',' << render(column.fidelity, fmt);
    csv << '\n';
    for (const auto &row : table1_rows()) {
        csv << row.measure;
        for (double v : row.values) csv << ',' << render(v, fmt);
        csv << '\n';
    }
    return csv.str();
}

std::string fig3_csv(const Format &fmt) {
    std::ostringstream csv;
    csv << "# W state with white noise, phi = W; SDP renormalized-GMN curve not computed\n";
    csv << "p,fidelity,S,cren_lb\n";
    const PureState w = states::w_state(3);
    const PhiProfile profile = profile_phi(w);
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const double fidelity = fidelity_pure(states::white_noise_mix(w, p), w);
        const auto report = bounds_from_fidelity(fidelity, profile);
        csv << render(p, fmt) << ',' << render(fidelity, fmt) << ',' << render(report.s, fmt) << ','
            << render(report.cren.value, fmt) << '\n';
    }
    return csv.str();
}

std::string fig4_csv(const Format &fmt) {
    std::ostringstream csv;
    csv << "qubits,fidelity_lb,s1_prime,m_prime,S,cren_lb,concurrence_lb,geometric_lb\n";
    for (const auto &row : fig4_rows()) {
        csv << row.qubits << ',' << render(row.fidelity_lower_bound, fmt) << ',' << render(row.profile.s1_prime, fmt)
            << ',' << row.profile.m_prime << ',' << render(row.report.s, fmt) << ','
            << render(row.report.cren.value, fmt) << ',' << render(row.report.concurrence.value, fmt) << ','
            << render(row.report.geometric.value, fmt) << '\n';
    }
    return csv.str();
}

} // namespace

std::string repro_csv(const std::string &target, const Format &fmt) {
    if (target == "table1") return table1_csv(fmt);
    if (target == "fig3") return fig3_csv(fmt);
    if (target == "fig4") return fig4_csv(fmt);
    throw ValidationError(ErrorKind::Parse, "unknown repro target '" + target + "' (expected table1, fig3 or fig4)");
}

// ---------------------------------------------------------------------------
// verify

VerifyResult run_verify(const VerifyRequest &request) {
    const DensityOperator rho = as_density(resolve_state(request.state));
    const PureState phi = resolve_pure(request.phi);
    if (rho.dims() != phi.dims()) throw ValidationError(ErrorKind::DimensionMismatch, "state and phi registers differ");
    const auto basis = resolve_basis(request.basis, phi.dimension());

    PhiProfile profile = profile_phi(phi, {request.workers});
    if (request.debug_halve_s1) profile.s1_prime /= 2;
    const auto cprofile = coherence_profile(phi, basis);
    const double fidelity = fidelity_pure(rho, phi);

    oracle::RoofOptions roof;
    roof.trials = request.trials;
    roof.seed = request.seed;
    roof.basis = basis;
    roof.workers = request.workers;

    VerifyResult result;
    for (const auto measure : oracle::all_measures) {
        VerifyCheck check{measure, std::numeric_limits<double>::quiet_NaN(), 0.0, false};
        check.oracle_upper = oracle::convex_roof_upper(rho, measure, roof);
        try {
            const int m_prime = profile.m_prime;
            switch (measure) {
            case oracle::Measure::Cren: check.lower_bound = cren_lb(s_value(fidelity, profile.s1_prime)); break;
            case oracle::Measure::Concurrence:
                check.lower_bound = concurrence_lb(s_value(fidelity, profile.s1_prime), m_prime);
                break;
            case oracle::Measure::GConcurrence:
                check.lower_bound = gconcurrence_lb(s_value(fidelity, profile.s1_prime), m_prime);
                break;
            case oracle::Measure::GeometricEntanglement:
                check.lower_bound = geometric_lb(s_value(fidelity, profile.s1_prime), m_prime);
                break;
            case oracle::Measure::L1Coherence: check.lower_bound = l1_lb(d_value(fidelity, cprofile.d_max_sq)); break;
            case oracle::Measure::GeometricCoherence:
                check.lower_bound = geom_coherence_lb(d_value(fidelity, cprofile.d_max_sq), cprofile.m);
                break;
            case oracle::Measure::CoherenceOfFormation:
                check.lower_bound = formation_lb(d_value(fidelity, cprofile.d_max_sq), cprofile.m);
                break;
            }
            check.pass = check.lower_bound <= check.oracle_upper + kVerifySlack;
        } catch (const ValidationError &) {
            // A bound outside its domain means the profile is inconsistent with rho.
            check.pass = false;
        }
        result.pass = result.pass && check.pass;
        result.checks.push_back(check);
    }
    return result;
}

Json verify_json(const VerifyRequest &request, const VerifyResult &result, const Format &fmt) {
    Json checks = Json::array();
    for (const auto &c : result.checks) {
        Json entry{{"measure", oracle::to_string(c.measure)}};
        if (std::isnan(c.lower_bound)) {
            entry["lower_bound"] = nullptr;
            entry["gap"] = nullptr;
            entry["error"] = "bound undefined for this profile";
        } else {
            entry["lower_bound"] = rounded(c.lower_bound, fmt);
            entry["gap"] = rounded(c.oracle_upper - c.lower_bound, fmt);
        }
        entry["oracle_upper"] = rounded(c.oracle_upper, fmt);
        entry["pass"] = c.pass;
        checks.push_back(std::move(entry));
    }
    return Json{{"state", request.state},
                {"phi", request.phi},
                {"basis", request.basis},
                {"trials", request.trials},
                {"seed", request.seed},
                {"debug_halve_s1", request.debug_halve_s1},
                {"checks", std::move(checks)},
                {"pass", result.pass}};
}

} // namespace fidbound::cli
