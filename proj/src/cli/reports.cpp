#include "fidbound/cli/cli.hpp"

#include <cstdio>

namespace fidbound::cli {

std::string render(double value, const Format &fmt) {
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt.full_precision ? "%.17g" : "%.6g", value == 0.0 ? 0.0 : value);
    return buf;
}

double rounded(double value, const Format &fmt) {
    if (fmt.full_precision) return value;
    return std::stod(render(value, fmt));
}

namespace {

Json bound_json(const BoundValue &b, const Format &fmt) {
    return Json{{"value", rounded(b.value, fmt)}, {"raw", rounded(b.raw, fmt)}, {"clamped", b.clamped}};
}

Json interval_json(const std::optional<BasicInterval<double>> &interval, const Format &fmt) {
    if (!interval) return nullptr;
    return Json::array({rounded(interval->low, fmt), rounded(interval->high, fmt)});
}

} // namespace

Json profile_json(const PhiProfile &profile, const Format &fmt, int top_k) {
    Json cuts = Json::array();
    for (const auto &[cut, spectrum] : profile.spectra) {
        Json coeffs = Json::array();
        for (std::size_t i = 0; i < spectrum.coeffs_sq.size(); ++i) {
            if (top_k >= 0 && static_cast<int>(i) >= top_k) break;
            coeffs.push_back(rounded(spectrum.coeffs_sq[i], fmt));
        }
        cuts.push_back(Json{{"alpha", cut.alpha_parties()},
                            {"d_alpha", cut.d_alpha()},
                            {"d_alphabar", cut.d_alphabar()},
                            {"rank", spectrum.rank},
                            {"coeffs_sq", std::move(coeffs)}});
    }
    return Json{{"s1_prime", rounded(profile.s1_prime, fmt)},
                {"m_prime", profile.m_prime},
                {"m_prime_rank", profile.m_prime_rank},
                {"bipartition_count", profile.spectra.size()},
                {"bipartitions", std::move(cuts)}};
}

Json gme_report_json(const GmeBoundReport &r, const Format &fmt) {
    return Json{{"fidelity", rounded(r.fidelity, fmt)},
                {"s1_prime", rounded(r.s1_prime, fmt)},
                {"m_prime", r.m_prime},
                {"m_prime_mode", r.m_prime_mode == MPrimeMode::Dimension ? "dimension" : "rank"},
                {"S", rounded(r.s, fmt)},
                {"S_interval", interval_json(r.s_interval, fmt)},
                {"bounds",
                 {{"cren", bound_json(r.cren, fmt)},
                  {"concurrence", bound_json(r.concurrence, fmt)},
                  {"gconcurrence", bound_json(r.gconcurrence, fmt)},
                  {"geometric", bound_json(r.geometric, fmt)}}},
                {"witness_value", rounded(r.witness_value, fmt)}};
}

Json coherence_profile_json(const CoherenceProfile &profile, const Format &fmt) {
    return Json{{"d_max_sq", rounded(profile.d_max_sq, fmt)}, {"m", profile.m}};
}

Json coherence_report_json(const CoherenceBoundReport &r, const Format &fmt) {
    return Json{{"fidelity", rounded(r.fidelity, fmt)},
                {"d_max_sq", rounded(r.d_max_sq, fmt)},
                {"m", r.m},
                {"D", rounded(r.d, fmt)},
                {"D_interval", interval_json(r.d_interval, fmt)},
                {"bounds",
                 {{"l1", bound_json(r.l1, fmt)},
                  {"geometric", bound_json(r.geometric, fmt)},
                  {"formation", bound_json(r.formation, fmt)}}},
                {"formation_branch", r.formation_branch == FormationBranch::Entropic ? "entropic" : "linear"},
                {"witness_value", rounded(r.witness_value, fmt)}};
}

} // namespace fidbound::cli
