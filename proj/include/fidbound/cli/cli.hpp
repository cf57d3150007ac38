#pragma once

// Building blocks of the fidbound command-line tool, kept in a library so the
// test suite can drive them without spawning processes.

#include "fidbound/oracle.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace fidbound::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kNumericalError = 2,
    kVerifyFailure = 3,
};

// ---------------------------------------------------------------------------
// State sources

using AnyState = std::variant<PureState, DensityOperator>;

/// Parses a state document:
///   {"dims": [2, 2], "kind": "pure" | "density", "entries": [...]}
/// Entries are row-major; each entry is [re, im] or a bare real. Density
/// entries may be flat (dim^2 values) or nested rows.
AnyState parse_state_document(const Json &doc);
AnyState read_state_file(const std::string &path);
Json state_document(const AnyState &state);

/// Factory spec or file path:
///   ghz:N[:phase=THETA][:flip=BITS]   w:N   cluster:N   product:N
///   ghzdiag:P0,P1,...                 wnoise:<pure spec>:p=X
///   file:PATH  or  PATH
AnyState resolve_state(const std::string &source);
PureState resolve_pure(const std::string &source);
DensityOperator as_density(const AnyState &state);

/// "computational" or a file holding {"kind": "basis", "entries": ...} whose
/// columns are the basis vectors.
ReferenceBasis resolve_basis(const std::string &source, long dimension);

// ---------------------------------------------------------------------------
// Number rendering

struct Format {
    bool full_precision = false;
};

/// 6 significant digits unless full precision is requested.
double rounded(double value, const Format &fmt);
std::string render(double value, const Format &fmt);

Json profile_json(const PhiProfile &profile, const Format &fmt, int top_k = -1);
Json gme_report_json(const GmeBoundReport &report, const Format &fmt);
Json coherence_profile_json(const CoherenceProfile &profile, const Format &fmt);
Json coherence_report_json(const CoherenceBoundReport &report, const Format &fmt);

// ---------------------------------------------------------------------------
// Commands

struct BoundsRequest {
    std::optional<std::string> state;
    std::optional<double> fidelity;
    std::optional<double> fidelity_sigma;
    std::string phi;
    std::string basis = "computational";
    bool gme = true;
    bool coherence = true;
    MPrimeMode m_prime_mode = MPrimeMode::Dimension;
    unsigned workers = 1;
};

struct BoundsResult {
    GmeBoundReport gme;
    CoherenceBoundReport coherence;
    PhiProfile profile;
    CoherenceProfile coherence_profile;
    std::vector<std::string> warnings;
};

BoundsResult compute_bounds(const BoundsRequest &request);
Json bounds_json(const BoundsRequest &request, const BoundsResult &result, const Format &fmt);
std::string bounds_csv(const BoundsRequest &request, const BoundsResult &result, const Format &fmt);

Json profile_command(const std::string &phi_source, int top_k, unsigned workers, const Format &fmt);

// Published data reproduced by `repro`.
struct Table1Column {
    std::string label;
    int photons;
    double fidelity;
};
const std::vector<Table1Column> &table1_columns();

struct Fig4Point {
    int qubits;
    double fidelity_lower_bound;
};
const std::vector<Fig4Point> &fig4_points();

struct Table1Row {
    std::string measure;
    std::vector<double> values;
};
std::vector<Table1Row> table1_rows();

struct Fig4Row {
    int qubits;
    double fidelity_lower_bound;
    PhiProfile profile;
    GmeBoundReport report;
};
std::vector<Fig4Row> fig4_rows(unsigned workers = 1);

/// CSV for "table1", "fig3" or "fig4".
std::string repro_csv(const std::string &target, const Format &fmt);

struct VerifyRequest {
    std::string state;
    std::string phi;
    std::string basis = "computational";
    int trials = 200;
    std::uint64_t seed = 0;
    bool debug_halve_s1 = false;
    unsigned workers = 1;
};

struct VerifyCheck {
    oracle::Measure measure;
    double lower_bound;
    double oracle_upper;
    bool pass;
};

struct VerifyResult {
    std::vector<VerifyCheck> checks;
    bool pass = true;
};

inline constexpr double kVerifySlack = 1e-9;

VerifyResult run_verify(const VerifyRequest &request);
Json verify_json(const VerifyRequest &request, const VerifyResult &result, const Format &fmt);

/// Entry point used by tools/fidbound; returns the process exit code.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace fidbound::cli
