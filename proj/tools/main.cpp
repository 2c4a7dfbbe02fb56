// wva: entanglement-assisted, power-recycled weak-value-amplification
// metrology toolkit.  Subcommands: eval | sweep | figure | selftest | mc.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wva/analytic.hpp"
#include "wva/config_io.hpp"
#include "wva/errors.hpp"
#include "wva/figures.hpp"
#include "wva/format.hpp"
#include "wva/mc.hpp"
#include "wva/observables.hpp"
#include "wva/selftest.hpp"
#include "wva/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct SharedOptions {
    std::string config_path;
    std::string out_path;
    int jobs = 1;
    std::uint64_t seed = 12345;
    wva::ConfigValues flags;  // values captured from the field flags

    CLI::Option* opt_n = nullptr;
    CLI::Option* opt_g = nullptr;
    CLI::Option* opt_phi = nullptr;
    CLI::Option* opt_r = nullptr;
    CLI::Option* opt_gamma = nullptr;
    CLI::Option* opt_qkd = nullptr;
    CLI::Option* opt_qdk = nullptr;
};

void add_shared_options(CLI::App* cmd, SharedOptions& shared) {
    cmd->add_option("--config", shared.config_path, "Flat key=value config file");
    cmd->add_option("--out", shared.out_path, "Output path");
    cmd->add_option("--jobs", shared.jobs, "Worker threads for grids and replicas")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", shared.seed, "Base RNG seed");
    shared.opt_n = cmd->add_option("--n", shared.flags.n, "Entangled ancilla qubits");
    shared.opt_g = cmd->add_option("--g", shared.flags.g, "Weak coupling strength (rad)");
    shared.opt_phi = cmd->add_option("--phi", shared.flags.phi, "Postselection angle (rad)");
    shared.opt_r = cmd->add_option("--r", shared.flags.r, "Mirror amplitude reflectivity");
    shared.opt_gamma = cmd->add_option("--gamma", shared.flags.gamma, "Single-pass power loss");
    shared.opt_qkd = cmd->add_option("--q_keep_to_discard", shared.flags.q_keep_to_discard,
                                     "Per-qubit P(success read as failure)");
    shared.opt_qdk = cmd->add_option("--q_discard_to_keep", shared.flags.q_discard_to_keep,
                                     "Per-qubit P(failure read as success)");
}

// defaults -> config file -> explicit flags.
wva::ConfigValues resolve_values(const SharedOptions& shared) {
    wva::ConfigValues values;
    if (!shared.config_path.empty()) values = wva::load_config_file(shared.config_path, values);
    if (shared.opt_n->count() > 0) values.n = shared.flags.n;
    if (shared.opt_g->count() > 0) values.g = shared.flags.g;
    if (shared.opt_phi->count() > 0) values.phi = shared.flags.phi;
    if (shared.opt_r->count() > 0) values.r = shared.flags.r;
    if (shared.opt_gamma->count() > 0) values.gamma = shared.flags.gamma;
    if (shared.opt_qkd->count() > 0) values.q_keep_to_discard = shared.flags.q_keep_to_discard;
    if (shared.opt_qdk->count() > 0) values.q_discard_to_keep = shared.flags.q_discard_to_keep;
    return values;
}

std::set<std::string> overridden_fields(const SharedOptions& shared) {
    std::set<std::string> fields;
    if (shared.opt_n->count() > 0) fields.insert("n");
    if (shared.opt_g->count() > 0) fields.insert("g");
    if (shared.opt_phi->count() > 0) fields.insert("phi");
    if (shared.opt_r->count() > 0) fields.insert("r");
    if (shared.opt_gamma->count() > 0) fields.insert("gamma");
    if (shared.opt_qkd->count() > 0) fields.insert("q_keep_to_discard");
    if (shared.opt_qdk->count() > 0) fields.insert("q_discard_to_keep");
    return fields;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_file(out_path, content);
    }
}

nlohmann::ordered_json config_json(const wva::ExperimentConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["n"] = cfg.n;
    doc["g"] = cfg.g;
    doc["phi"] = cfg.phi;
    doc["r"] = cfg.r;
    doc["gamma"] = cfg.gamma;
    doc["q_keep_to_discard"] = cfg.q_keep_to_discard;
    doc["q_discard_to_keep"] = cfg.q_discard_to_keep;
    doc["p"] = cfg.p;
    doc["L"] = cfg.L;
    return doc;
}

int run_eval(const SharedOptions& shared, wva::QfiForm form, wva::RecycleVariant variant) {
    const wva::ExperimentConfig cfg = wva::make_config(resolve_values(shared));
    const wva::Observables obs = wva::evaluate_all(cfg, form, variant);
    nlohmann::ordered_json doc;
    doc["config"] = config_json(cfg);
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    nlohmann::ordered_json status = nlohmann::ordered_json::object();
    for (const auto& [name, quantity] : obs.items) {
        if (quantity.value.has_value()) {
            values[name] = *quantity.value;
        } else {
            values[name] = nullptr;
            status[name] = quantity.status;
        }
    }
    doc["observables"] = values;
    doc["status"] = status;
    doc["warnings"] = obs.warnings;
    emit(shared.out_path, doc.dump(2) + "\n");
    return kExitOk;
}

int run_sweep_cmd(const SharedOptions& shared, const std::vector<std::string>& axis_specs,
                  wva::QfiForm form, wva::RecycleVariant variant) {
    wva::SweepSpec spec;
    spec.base = resolve_values(shared);
    spec.form = form;
    spec.variant = variant;
    spec.jobs = shared.jobs;
    for (const std::string& text : axis_specs) {
        // name:start:stop:count[:log|:lin]
        wva::SweepAxis axis;
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() < 4 || parts.size() > 5)
            throw wva::ConfigError("bad --axis spec '" + text +
                                   "' (want name:start:stop:count[:log])");
        axis.name = parts[0];
        axis.start = std::stod(parts[1]);
        axis.stop = std::stod(parts[2]);
        axis.count = std::stoi(parts[3]);
        if (parts.size() == 5) {
            if (parts[4] == "log") {
                axis.log = true;
            } else if (parts[4] != "lin") {
                throw wva::ConfigError("bad axis spacing '" + parts[4] + "' (lin|log)");
            }
        }
        spec.axes.push_back(axis);
    }
    std::ostringstream csv;
    wva::run_sweep(spec, csv, std::cerr);
    emit(shared.out_path, csv.str());
    return kExitOk;
}

int run_figure(const SharedOptions& shared, const std::string& id, bool plot_script) {
    wva::FigureRequest request;
    request.id = id;
    request.base = resolve_values(shared);
    request.overridden = overridden_fields(shared);
    std::ostringstream csv;
    wva::write_figure(request, csv);
    const std::string out_path = shared.out_path.empty() ? ("fig" + id + ".csv") : shared.out_path;
    write_file(out_path, csv.str());
    std::cout << "wrote " << out_path << "\n";
    if (plot_script) {
        const std::string script_path = out_path + ".py";
        write_file(script_path, wva::figure_plot_script(id, out_path));
        std::cout << "wrote " << script_path << "\n";
    }
    return kExitOk;
}

int run_selftest_cmd(const SharedOptions& shared, bool quick, double perturb) {
    wva::SelftestOptions options;
    options.quick = quick;
    options.inject_perturbation = perturb;
    options.jobs = shared.jobs;
    const wva::SelftestReport report = wva::run_selftest(options);
    wva::print_report(report, std::cout);
    if (!shared.out_path.empty())
        write_file(shared.out_path, wva::report_to_json(report).dump(2) + "\n");
    return report.all_pass() ? kExitOk : kExitValidation;
}

int run_mc(const SharedOptions& shared, long long shots, int replicas, double bracket_lo,
           double bracket_hi, bool bracket_set) {
    const wva::ExperimentConfig cfg = wva::make_config(resolve_values(shared));
    wva::Bracket bracket = wva::default_bracket(cfg);
    if (bracket_set) bracket = {bracket_lo, bracket_hi};
    const std::vector<wva::McResult> results =
        wva::mc_replicas(cfg, shots, replicas, shared.seed, bracket, shared.jobs);

    std::string csv = wva::csv_row({"replica", "stream_seed", "shots", "count_r", "count_l",
                                    "count_discard", "g_hat", "se_hat", "status"});
    for (std::size_t i = 0; i < results.size(); ++i) {
        const wva::McResult& res = results[i];
        csv += wva::csv_row({std::to_string(i), std::to_string(res.seed),
                             std::to_string(res.shots), std::to_string(res.counts.detected_r),
                             std::to_string(res.counts.detected_l),
                             std::to_string(res.counts.discarded),
                             res.mle_ok ? wva::format_double(res.g_hat) : "",
                             res.mle_ok ? wva::format_double(res.se_hat) : "",
                             res.mle_ok ? "" : res.mle_message});
    }
    const std::string out_path = shared.out_path.empty() ? "mc.csv" : shared.out_path;
    write_file(out_path, csv);

    const wva::McSummary summary = wva::summarize(cfg, results, shared.seed);
    nlohmann::ordered_json doc;
    doc["shots"] = summary.shots;
    doc["replicas"] = summary.replicas;
    doc["seed"] = summary.seed;
    doc["g_true"] = summary.g_true;
    doc["mean_g_hat"] = summary.mean_g_hat;
    doc["var_g_hat"] = summary.var_g_hat;
    doc["fisher_information"] = summary.fisher_information;
    doc["crb"] = summary.crb;
    doc["efficiency_ratio"] = summary.efficiency_ratio;
    doc["failed_replicas"] = summary.failed_replicas;
    doc["csv"] = out_path;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-assisted power-recycled weak-value metrology toolkit"};
    app.require_subcommand(1);

    SharedOptions shared_eval, shared_sweep, shared_figure, shared_selftest, shared_mc;

    std::string qfi_form_text = "derived";
    std::string variant_text = "linear";

    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate every observable as JSON");
    add_shared_options(eval_cmd, shared_eval);
    eval_cmd->add_option("--qfi-form", qfi_form_text, "derived|asprinted QFI column");
    eval_cmd->add_option("--variant", variant_text, "linear|exact intensity evaluation");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep to CSV");
    add_shared_options(sweep_cmd, shared_sweep);
    std::vector<std::string> axis_specs;
    sweep_cmd->add_option("--axis", axis_specs, "name:start:stop:count[:log] (1 or 2)")
        ->required()
        ->expected(1, 2);
    std::string sweep_form_text = "derived";
    std::string sweep_variant_text = "linear";
    sweep_cmd->add_option("--qfi-form", sweep_form_text, "derived|asprinted QFI column");
    sweep_cmd->add_option("--variant", sweep_variant_text, "linear|exact intensity evaluation");

    CLI::App* figure_cmd = app.add_subcommand("figure", "Reproduce a figure dataset as CSV");
    add_shared_options(figure_cmd, shared_figure);
    std::string figure_id;
    figure_cmd->add_option("id", figure_id, "2|3a|3b|4|5|6|7|8")->required();
    bool plot_script = false;
    figure_cmd->add_flag("--plot-script", plot_script, "Also write a matplotlib script");

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "Run the oracle-vs-analytic validation suite");
    add_shared_options(selftest_cmd, shared_selftest);
    bool quick = false;
    double perturb = 0.0;
    selftest_cmd->add_flag("--quick", quick, "Reduced grid");
    selftest_cmd->add_option("--perturb", perturb, "Inject an analytic perturbation (test hook)")
        ->group("");  // hidden

    CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimation experiment");
    add_shared_options(mc_cmd, shared_mc);
    long long shots = 100000;
    int replicas = 10;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    mc_cmd->add_option("--shots", shots, "Shots per replica")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--replicas", replicas, "Independent replicas")
        ->check(CLI::PositiveNumber);
    CLI::Option* opt_blo = mc_cmd->add_option("--bracket-lo", bracket_lo, "MLE bracket lower end");
    CLI::Option* opt_bhi = mc_cmd->add_option("--bracket-hi", bracket_hi, "MLE bracket upper end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        auto parse_form = [](const std::string& text) {
            if (text == "derived") return wva::QfiForm::Derived;
            if (text == "asprinted") return wva::QfiForm::AsPrinted;
            throw wva::ConfigError("bad --qfi-form '" + text + "' (derived|asprinted)");
        };
        auto parse_variant = [](const std::string& text) {
            if (text == "linear") return wva::RecycleVariant::Linear;
            if (text == "exact") return wva::RecycleVariant::Exact;
            throw wva::ConfigError("bad --variant '" + text + "' (linear|exact)");
        };
        if (eval_cmd->parsed())
            return run_eval(shared_eval, parse_form(qfi_form_text), parse_variant(variant_text));
        if (sweep_cmd->parsed())
            return run_sweep_cmd(shared_sweep, axis_specs, parse_form(sweep_form_text),
                                 parse_variant(sweep_variant_text));
        if (figure_cmd->parsed()) return run_figure(shared_figure, figure_id, plot_script);
        if (selftest_cmd->parsed()) return run_selftest_cmd(shared_selftest, quick, perturb);
        if (mc_cmd->parsed()) {
            const bool bracket_set = opt_blo->count() > 0 || opt_bhi->count() > 0;
            if (opt_blo->count() != opt_bhi->count())
                throw wva::ConfigError("--bracket-lo and --bracket-hi must be given together");
            return run_mc(shared_mc, shots, replicas, bracket_lo, bracket_hi, bracket_set);
        }
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const wva::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
