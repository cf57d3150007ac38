#include "fidbound/cli/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace fidbound::cli {

namespace {

void write_to(const std::string &path, const std::string &text) {
    std::ofstream file(path);
    if (!file) throw ValidationError(ErrorKind::Parse, "cannot write '" + path + "'");
    file << text;
}

void emit(std::ostream &out, const std::optional<std::string> &path, const std::string &text) {
    if (path)
        write_to(*path, text);
    else
        out << text;
}

} // namespace

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Fidelity-based lower bounds for genuine multipartite entanglement and coherence measures",
                 "fidbound"};
    app.require_subcommand(1);
    Format fmt;
    app.add_flag("--full-precision", fmt.full_precision, "Emit unrounded numbers")->trigger_on_parse();
    unsigned workers = 1;
    app.add_option("--workers", workers, "Threads for bipartition scans and oracle trials (0 = all cores)");

    // bounds
    BoundsRequest bounds;
    std::optional<std::string> bounds_csv_path;
    std::string only = "all";
    std::string m_prime_mode = "dimension";
    auto *cmd_bounds = app.add_subcommand("bounds", "Lower bounds from a state or a measured fidelity");
    auto *opt_state = cmd_bounds->add_option("--state", bounds.state, "State file or factory spec");
    auto *opt_fid = cmd_bounds->add_option("--fidelity", bounds.fidelity, "Fidelity (or a lower bound on it)")
                        ->check(CLI::Range(0.0, 1.0));
    opt_state->excludes(opt_fid);
    cmd_bounds->add_option("--sigma", bounds.fidelity_sigma, "Fidelity standard deviation")->check(CLI::NonNegativeNumber);
    cmd_bounds->add_option("--phi", bounds.phi, "Chosen pure state")->required();
    cmd_bounds->add_option("--basis", bounds.basis, "Reference basis: 'computational' or a basis file");
    cmd_bounds->add_option("--only", only, "gme, coherence or all")->check(CLI::IsMember({"gme", "coherence", "all"}));
    cmd_bounds->add_option("--m-prime", m_prime_mode, "dimension (default) or rank (diagnostic)")
        ->check(CLI::IsMember({"dimension", "rank"}));
    cmd_bounds->add_option("--csv", bounds_csv_path, "Also write the bounds as CSV to this path");
    cmd_bounds->add_flag("--full-precision", fmt.full_precision, "Emit unrounded numbers");

    // profile
    std::string profile_phi_source;
    int top_k = -1;
    auto *cmd_profile = app.add_subcommand("profile", "Schmidt profile (s1', m') of a pure state");
    cmd_profile->add_option("phi", profile_phi_source, "Pure state source")->required();
    cmd_profile->add_option("--top-k", top_k, "Keep only the k largest coefficients per bipartition");
    cmd_profile->add_flag("--full-precision", fmt.full_precision, "Emit unrounded numbers");

    // repro
    std::string target;
    std::optional<std::string> repro_out;
    auto *cmd_repro = app.add_subcommand("repro", "Reproduce published tables and curves as CSV");
    cmd_repro->add_option("target", target, "table1, fig3 or fig4")->required();
    cmd_repro->add_option("-o,--output", repro_out, "Write CSV to this path");
    cmd_repro->add_flag("--full-precision", fmt.full_precision, "Emit unrounded numbers");

    // verify
    VerifyRequest verify;
    auto *cmd_verify = app.add_subcommand("verify", "Check every lower bound against the brute-force oracle");
    cmd_verify->add_option("--state", verify.state, "State file or factory spec")->required();
    cmd_verify->add_option("--phi", verify.phi, "Chosen pure state")->required();
    cmd_verify->add_option("--basis", verify.basis, "Reference basis for coherence measures");
    cmd_verify->add_option("--trials", verify.trials, "Random decompositions per measure")->check(CLI::NonNegativeNumber);
    cmd_verify->add_option("--seed", verify.seed, "Seed for the decomposition sampler");
    cmd_verify->add_flag("--debug-halve-s1", verify.debug_halve_s1, "Fault injection: use s1'/2");
    cmd_verify->add_flag("--full-precision", fmt.full_precision, "Emit unrounded numbers");

    // state make
    std::string make_spec;
    std::optional<std::string> make_out;
    auto *cmd_state = app.add_subcommand("state", "State file utilities");
    cmd_state->require_subcommand(1);
    auto *cmd_make = cmd_state->add_subcommand("make", "Write a factory state as a state file");
    cmd_make->add_option("spec", make_spec, "Factory spec, e.g. ghz:3 or wnoise:w:3:p=0.8")->required();
    cmd_make->add_option("-o,--output", make_out, "Write to this path instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }

    try {
        if (*cmd_bounds) {
            bounds.gme = only != "coherence";
            bounds.coherence = only != "gme";
            bounds.m_prime_mode = m_prime_mode == "rank" ? MPrimeMode::Rank : MPrimeMode::Dimension;
            bounds.workers = workers;
            const auto result = compute_bounds(bounds);
            for (const auto &w : result.warnings) err << "warning: " << w << '\n';
            out << bounds_json(bounds, result, fmt).dump(2) << '\n';
            if (bounds_csv_path) write_to(*bounds_csv_path, bounds_csv(bounds, result, fmt));
        } else if (*cmd_profile) {
            out << profile_command(profile_phi_source, top_k, workers, fmt).dump(2) << '\n';
        } else if (*cmd_repro) {
            emit(out, repro_out, repro_csv(target, fmt));
        } else if (*cmd_verify) {
            verify.workers = workers;
            const auto result = run_verify(verify);
            out << verify_json(verify, result, fmt).dump(2) << '\n';
            if (!result.pass) {
                err << "verify: at least one lower bound exceeds the oracle upper bound\n";
                return kVerifyFailure;
            }
        } else if (*cmd_make) {
            emit(out, make_out, state_document(resolve_state(make_spec)).dump(2) + "\n");
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const NumericalError &e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kNumericalError;
    }
    return kOk;
}

} // namespace fidbound::cli
