// Command-line front-end: single-point cloning evaluations, figure-data
// sweeps, optimal-parameter queries and the D1 discrepancy report.
// Exit codes: 0 success, 2 argument/domain error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qclone/sweep.hpp"

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw IoError("failed while writing: " + path);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

qclone::MachineKind parse_machine(const std::string& name) {
    if (name == "universal") return qclone::MachineKind::universal;
    if (name == "equatorial") return qclone::MachineKind::equatorial;
    if (name == "optimal") return qclone::MachineKind::optimal;
    if (name == "custom") return qclone::MachineKind::custom;
    throw std::domain_error("unknown machine kind: " + name);
}

qclone::SweepTarget parse_target(const std::string& name) {
    if (name == "fig1") return qclone::SweepTarget::fig1;
    if (name == "fig2") return qclone::SweepTarget::fig2;
    if (name == "fig3") return qclone::SweepTarget::fig3;
    if (name == "fig4") return qclone::SweepTarget::fig4;
    if (name == "fig5") return qclone::SweepTarget::fig5;
    if (name == "custom") return qclone::SweepTarget::custom;
    throw std::domain_error("unknown sweep target: " + name);
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("range must be given as lo:hi");
    std::size_t lo_end = 0, hi_end = 0;
    const std::string lo_s = text.substr(0, colon), hi_s = text.substr(colon + 1);
    const double lo = std::stod(lo_s, &lo_end);
    const double hi = std::stod(hi_s, &hi_end);
    if (lo_end != lo_s.size() || hi_end != hi_s.size())
        throw std::domain_error("range must be given as lo:hi with numeric bounds");
    return {lo, hi};
}

// One complex amplitude per line as "re im"; blank lines are skipped.
qclone::QuditState read_amplitudes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open amplitude file: " + path);
    std::vector<qclone::Complex> amps;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double re, im;
        if (!(ls >> re)) continue;  // blank line
        if (!(ls >> im))
            throw std::domain_error("amplitude line needs two numbers (re im): " + line);
        amps.emplace_back(re, im);
    }
    if (amps.size() < 2)
        throw std::domain_error("amplitude file must contain at least two levels");
    const int d = static_cast<int>(amps.size());
    return qclone::QuditState::normalized(d, std::move(amps));
}

qclone::MachineParams qubit_machine(const std::string& kind_name, double theta, double mu,
                                    bool mu_given) {
    const qclone::MachineKind kind = parse_machine(kind_name);
    if (kind == qclone::MachineKind::custom) {
        if (!mu_given) throw std::domain_error("--machine custom requires --mu");
        return qclone::machine_preset(kind, mu);
    }
    return qclone::machine_preset(kind, theta);
}

qclone::MachineParams qudit_machine(const std::string& kind_name, const qclone::QuditState& state,
                                    double mu, bool mu_given) {
    const int d = state.d;
    switch (parse_machine(kind_name)) {
        case qclone::MachineKind::universal:
            return qclone::universal_machine_d(d);
        case qclone::MachineKind::optimal: {
            const double a = qclone::a_psi(state);
            return d == 3 ? qclone::optimal_mu_qutrit(a) : qclone::optimal_mu_numeric(d, a);
        }
        case qclone::MachineKind::equatorial: {
            // Best machine for the fully balanced state of this dimension.
            if (d == 2) return qclone::MachineParams::from_mu(0.5, 2);
            if (d == 3) return qclone::optimal_mu_qutrit(1.0 / 3.0);
            return qclone::optimal_mu_numeric(d, 1.0 / d);
        }
        case qclone::MachineKind::custom:
            if (!mu_given) throw std::domain_error("--machine custom requires --mu");
            return qclone::MachineParams::from_mu(mu, d);
    }
    throw std::domain_error("unknown machine kind");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-covariant quantum cloning machines: fidelities, distances, "
                 "separability spectra and figure-data sweeps"};
    app.require_subcommand(1);

    double theta = 0.0, phi = 0.0, mu = 0.0, a_value = 0.0;
    int d = 3, grid = 400;
    std::string machine = "universal", sweep_machine = "optimal";
    std::string amplitudes_path, out_path, range_text;
    std::string target_name, format_name = "csv";
    bool have_mu = false, have_theta = false, have_d = false, have_a = false;

    auto* clone_cmd = app.add_subcommand("clone", "Evaluate one cloning point");
    clone_cmd->require_subcommand(1);

    auto* clone_qubit = clone_cmd->add_subcommand("qubit", "Clone a qubit state");
    clone_qubit->add_option("--theta", theta, "Polar angle in radians")->required();
    clone_qubit->add_option("--phi", phi, "Azimuthal angle in radians");
    clone_qubit->add_option("--machine", machine, "universal|equatorial|optimal|custom");
    clone_qubit->add_option("--mu", mu, "Machine parameter for --machine custom")
        ->each([&](const std::string&) { have_mu = true; });
    clone_qubit->add_option("--out", out_path, "Output file (default: stdout)");

    auto* clone_qudit = clone_cmd->add_subcommand("qudit", "Clone a d-level state");
    clone_qudit->add_option("--amplitudes", amplitudes_path,
                            "File with one amplitude per line as 're im'");
    clone_qudit->add_option("--d", d, "Dimension (equatorial state used when no file is given)");
    clone_qudit->add_option("--machine", machine, "universal|equatorial|optimal|custom");
    clone_qudit->add_option("--mu", mu, "Machine parameter for --machine custom")
        ->each([&](const std::string&) { have_mu = true; });
    clone_qudit->add_option("--out", out_path, "Output file (default: stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate a quantity over a parameter grid");
    sweep_cmd->add_option("--target", target_name, "fig1|fig2|fig3|fig4|fig5|custom")->required();
    sweep_cmd->add_option("--grid", grid, "Number of grid points (default 400)");
    sweep_cmd->add_option("--range", range_text, "Abscissa range as lo:hi");
    sweep_cmd->add_option("--machine", sweep_machine,
                          "Machine for fig4/custom (default optimal)");
    sweep_cmd->add_option("--mu", mu, "Fixed mu for fig4/custom")
        ->each([&](const std::string&) { have_mu = true; });
    sweep_cmd->add_option("--format", format_name, "csv|json (default csv)");
    sweep_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    auto* optimize_cmd =
        app.add_subcommand("optimize", "Fidelity-maximizing machine parameters");
    optimize_cmd->add_option("--theta", theta, "Qubit polar angle in radians")
        ->each([&](const std::string&) { have_theta = true; });
    optimize_cmd->add_option("--d", d, "Dimension for the d-level optimum")
        ->each([&](const std::string&) { have_d = true; });
    optimize_cmd->add_option("--a", a_value, "A = sum |alpha_k|^4 of the target state family")
        ->each([&](const std::string&) { have_a = true; });
    optimize_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    auto* discrepancy_cmd =
        app.add_subcommand("discrepancy", "Report the conflicting printed D1 values");
    discrepancy_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (clone_qubit->parsed()) {
            const qclone::BlochState state(theta, phi);
            const qclone::MachineParams params = qubit_machine(machine, theta, mu, have_mu);
            write_output(out_path, dump(qclone::run_point(state, params)));
        } else if (clone_qudit->parsed()) {
            const qclone::QuditState state = amplitudes_path.empty()
                                                 ? qclone::QuditState::equatorial(d)
                                                 : read_amplitudes(amplitudes_path);
            const qclone::MachineParams params = qudit_machine(machine, state, mu, have_mu);
            write_output(out_path, dump(qclone::run_point_qudit(state, params)));
        } else if (sweep_cmd->parsed()) {
            qclone::SweepSpec spec;
            spec.target = parse_target(target_name);
            spec.grid_points = grid;
            spec.machine = parse_machine(sweep_machine);
            if (have_mu) spec.mu_override = mu;
            if (!range_text.empty()) {
                const auto [lo, hi] = parse_range(range_text);
                if (spec.target == qclone::SweepTarget::fig5) {
                    spec.a_lo = lo;
                    spec.a_hi = hi;
                } else {
                    spec.theta_lo = lo;
                    spec.theta_hi = hi;
                }
            }
            if (format_name == "csv")
                spec.format = qclone::OutputFormat::csv;
            else if (format_name == "json")
                spec.format = qclone::OutputFormat::json;
            else
                throw std::domain_error("unknown format: " + format_name);
            spec.output_path = out_path;

            const qclone::SweepTable table = qclone::run_sweep(spec);
            write_output(spec.output_path, spec.format == qclone::OutputFormat::csv
                                               ? qclone::to_csv(table)
                                               : dump(qclone::to_json(table)));
        } else if (optimize_cmd->parsed()) {
            if (have_theta == (have_d || have_a))
                throw std::domain_error("optimize needs either --theta or --d with --a");
            nlohmann::ordered_json j;
            if (have_theta) {
                const qclone::MachineParams best = qclone::optimal_mu(theta);
                j["theta"] = qclone::round_sig12(theta);
                j["machine"] = qclone::machine_json(best);
                j["fidelity"] = qclone::round_sig12(qclone::fidelity_closed(theta, best));
                j["f_universal"] = qclone::round_sig12(5.0 / 6.0);
            } else {
                if (!have_d || !have_a)
                    throw std::domain_error("optimize needs both --d and --a");
                if (d == 3) {
                    const qclone::QutritOptimum opt = qclone::qutrit_branch_optima(a_value);
                    j["d"] = 3;
                    j["a"] = qclone::round_sig12(a_value);
                    j["machine"] = qclone::machine_json(opt.best());
                    j["fidelity"] = qclone::round_sig12(opt.best_fidelity());
                    j["f_plus_branch"] = qclone::round_sig12(opt.fidelity_plus);
                    j["f_minus_branch"] = qclone::round_sig12(opt.fidelity_minus);
                } else {
                    const qclone::MachineParams best = qclone::optimal_mu_numeric(d, a_value);
                    j["d"] = d;
                    j["a"] = qclone::round_sig12(a_value);
                    j["machine"] = qclone::machine_json(best);
                    j["fidelity"] =
                        qclone::round_sig12(qclone::fidelity_qudit_closed(a_value, best));
                }
                const qclone::ReferenceFidelities refs = qclone::reference_fidelities(d);
                j["f_phase_covariant_ref"] = qclone::round_sig12(refs.phase_covariant);
                j["f_universal_ref"] = qclone::round_sig12(refs.universal);
            }
            write_output(out_path, dump(j));
        } else if (discrepancy_cmd->parsed()) {
            write_output(out_path, dump(qclone::discrepancy_report()));
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
