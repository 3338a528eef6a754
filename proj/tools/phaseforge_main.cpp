#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "phaseforge/equiv.hpp"
#include "phaseforge/io.hpp"
#include "phaseforge/scenarios.hpp"

namespace {

using namespace phaseforge;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, double> parse_rate_overrides(const std::string& spec) {
    std::map<std::string, double> out;
    if (spec.empty()) return out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("rate override must look like name=value: " + item);
        const std::string key = item.substr(0, eq);
        try {
            out[key] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError("rate override value is not a number: " + item);
        }
    }
    return out;
}

double take_rate(std::map<std::string, double>& rates, const std::string& key, double fallback) {
    const auto it = rates.find(key);
    if (it == rates.end()) return fallback;
    const double v = it->second;
    rates.erase(it);
    return v;
}

Realization scenario_realization(const std::string& name, const std::string& rate_spec) {
    auto rates = parse_rate_overrides(rate_spec);
    Realization built = [&]() {
        if (name == "student") {
            StudentRates r;
            r.promote = {take_rate(rates, "xi1", r.promote[0]), take_rate(rates, "xi2", r.promote[1]),
                         take_rate(rates, "xi3", r.promote[2])};
            r.fail = {take_rate(rates, "beta1", r.fail[0]), take_rate(rates, "beta2", r.fail[1]),
                      take_rate(rates, "beta3", r.fail[2])};
            return student_dynamics(r);
        }
        if (name == "supply-chain") {
            SupplyRates r;
            r.discard = {take_rate(rates, "delta1", r.discard[0]), take_rate(rates, "delta2", r.discard[1])};
            r.ship = {take_rate(rates, "xi1", r.ship[0]), take_rate(rates, "xi2", r.ship[1])};
            r.return_rate = take_rate(rates, "beta3", r.return_rate);
            r.sell = take_rate(rates, "gamma3", r.sell);
            return supply_chain(r);
        }
        if (name == "continuous-example") return continuous_example();
        throw ParseError("unknown scenario \"" + name + "\" (expected student, supply-chain, continuous-example)");
    }();
    if (!rates.empty()) throw ParseError("unknown rate override \"" + rates.begin()->first + "\"");
    return built;
}

Realization load_realization(const std::string& input, const std::string& scenario, const std::string& rate_spec) {
    if (!scenario.empty()) return scenario_realization(scenario, rate_spec);
    if (input.empty()) throw ParseError("either --input or --scenario is required");
    return parse_realization(read_file(input));
}

TransformResult run_transform(const Realization& r) {
    return r.kind() == SystemKind::continuous ? cont_to_cph(r) : disc_to_dph(r);
}

/// Grid specs: "start:stop:step" (real grid), "a..b" (integer range),
/// or a comma-separated list of points.
Vector parse_grid(const std::string& spec) {
    Vector out;
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
        long a = 0, b = 0;
        try {
            a = std::stol(spec.substr(0, dots));
            b = std::stol(spec.substr(dots + 2));
        } catch (const std::exception&) {
            throw ParseError("bad integer range grid: " + spec);
        }
        if (a < 0 || b < a) throw ParseError("integer range grid must satisfy 0 <= a <= b: " + spec);
        for (long k = a; k <= b; ++k) out.push_back(static_cast<double>(k));
        return out;
    }
    if (spec.find(':') != std::string::npos) {
        std::stringstream ss(spec);
        std::string part;
        Vector fields;
        while (std::getline(ss, part, ':')) {
            try {
                fields.push_back(std::stod(part));
            } catch (const std::exception&) {
                throw ParseError("bad grid field: " + part);
            }
        }
        if (fields.size() != 3) throw ParseError("range grid must be start:stop:step: " + spec);
        const double start = fields[0], stop = fields[1], step = fields[2];
        if (!(step > 0.0) || stop < start || start < 0.0) throw ParseError("bad range grid: " + spec);
        for (double v = start; v <= stop + 1e-9 * step; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw ParseError("bad grid point: " + part);
        }
    }
    if (out.empty()) throw ParseError("empty grid spec");
    return out;
}

std::uint64_t default_seed(std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("PHASEFORGE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError("PHASEFORGE_SEED is not an unsigned integer");
        }
    }
    return 0;
}

int cmd_check(const std::string& input) {
    const RealizationDocument doc = parse_realization_document(read_file(input));
    const bool continuous = doc.kind == SystemKind::continuous;

    bool bc_nonneg = true;
    for (std::size_t i = 0; i < doc.B.size(); ++i)
        if (doc.B[i] < -1e-12 || doc.C[i] < -1e-12) bc_nonneg = false;
    bool a_ok = true;
    if (continuous) {
        a_ok = is_metzler(doc.A);
    } else {
        for (std::size_t i = 0; i < doc.A.rows() && a_ok; ++i)
            for (std::size_t j = 0; j < doc.A.cols() && a_ok; ++j)
                if (doc.A(i, j) < -1e-12) a_ok = false;
    }
    const bool structure = a_ok && bc_nonneg;
    const bool excitable = is_excitable(doc.A, doc.B);
    bool stable = false;
    if (structure) stable = is_stable(Realization(doc.kind, doc.A, doc.B, doc.C));

    json report;
    report[continuous ? "metzler" : "nonneg"] = structure;
    report["excitable"] = excitable;
    report["stable"] = stable;
    report["order"] = doc.B.size();
    std::cout << report.dump(2) << "\n";
    return (structure && excitable && stable) ? 0 : 1;
}

int cmd_convert(const std::string& input, const std::string& scenario, const std::string& rate_spec,
                const std::string& format) {
    const Realization r = load_realization(input, scenario, rate_spec);
    const TransformResult tr = run_transform(r);
    if (format == "csv")
        std::cout << transform_to_csv(tr);
    else
        std::cout << transform_to_json(tr);
    return 0;
}

int cmd_eval(const std::string& input, const std::string& what, const std::string& grid_spec, bool raw_alpha) {
    const TransformResult tr = parse_transform(read_file(input));
    const bool continuous = tr.kind == SystemKind::continuous;

    std::optional<ContPH> cph = tr.cph;
    std::optional<DiscPH> dph = tr.dph;
    if (raw_alpha) {
        double mass = 0.0;
        for (double a : tr.alpha_raw) mass += a;
        if (mass > 1.0 + 1e-10)
            throw PsiOutOfRange("--raw-alpha needs psi <= 1; this transform has psi = " + csv_number(mass));
        if (continuous)
            cph.emplace(tr.alpha_raw, tr.T, tr.exit);
        else
            dph.emplace(tr.alpha_raw, tr.T, tr.exit);
    }

    if (what == "mean") {
        std::cout << "x,value\n";
        std::cout << "mean," << csv_number(continuous ? ph_mean(*cph) : ph_mean(*dph)) << "\n";
        return 0;
    }

    if (grid_spec.empty()) throw ParseError("--grid is required for --what " + what);
    const Vector grid = parse_grid(grid_spec);

    if (what == "tpm") {
        if (!continuous) throw ParseError("tpm evaluation applies to continuous transforms");
        std::cout << "s,i,j,p\n";
        for (double s : grid) {
            const Matrix P = cph_tpm(*cph, s);
            for (std::size_t i = 0; i < P.rows(); ++i)
                for (std::size_t j = 0; j < P.cols(); ++j)
                    std::cout << csv_number(s) << "," << (i + 1) << "," << (j + 1) << ","
                              << csv_number(P(i, j)) << "\n";
        }
        return 0;
    }

    if (what != "pdf" && what != "pmf" && what != "cdf") throw ParseError("unknown --what \"" + what + "\"");
    if (what == "pdf" && !continuous) throw ParseError("pdf applies to continuous transforms; use pmf");
    if (what == "pmf" && continuous) throw ParseError("pmf applies to discrete transforms; use pdf");

    auto as_step = [](double g) {
        const double k = std::nearbyint(g);
        if (k < 0.0 || std::abs(g - k) > 1e-9) throw ParseError("discrete grid points must be nonnegative integers");
        return static_cast<std::uint64_t>(k);
    };

    std::cout << "x,value\n";
    for (double g : grid) {
        double value = 0.0;
        if (what == "pdf") {
            value = cph_pdf(*cph, g);
        } else if (what == "pmf") {
            value = dph_pmf(*dph, as_step(g));
        } else if (what == "cdf") {
            value = continuous ? cph_cdf(*cph, g) : dph_cdf(*dph, as_step(g));
        } else {
            throw ParseError("unknown --what \"" + what + "\"");
        }
        std::cout << csv_number(g) << "," << csv_number(value) << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& input, std::size_t samples, std::optional<std::uint64_t> seed_flag) {
    const TransformResult tr = parse_transform(read_file(input));
    const std::uint64_t seed = default_seed(seed_flag);
    const SampleSet set = tr.kind == SystemKind::continuous ? ph_sample(*tr.cph, samples, seed)
                                                            : ph_sample(*tr.dph, samples, seed);
    for (double v : set.values) std::cout << csv_number(v) << "\n";
    json summary;
    summary["mean"] = set.mean;
    summary["var"] = set.variance;
    summary["n"] = set.values.size();
    summary["seed"] = set.seed;
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_compare(const std::string& input, const std::string& scenario, const std::string& rate_spec,
                double u_level, const std::string& grid_spec, const std::string& transform_path) {
    const Realization r = load_realization(input, scenario, rate_spec);
    const TransformResult tr = transform_path.empty() ? run_transform(r)
                                                      : parse_transform(read_file(transform_path));
    if (tr.kind != r.kind()) throw ParseError("transform document kind does not match the realization");
    const Vector grid = parse_grid(grid_spec);

    const EquivalenceReport rep = verify_equivalence(r, tr, u_level, grid);
    std::cout << "t,y_system,y_ph\n";
    for (std::size_t i = 0; i < rep.grid.size(); ++i)
        std::cout << csv_number(rep.grid[i]) << "," << csv_number(rep.y_system[i]) << ","
                  << csv_number(rep.y_ph[i]) << "\n";
    const bool pass = equivalence_pass(rep);
    std::cout << "MAX_ABS_ERR=" << csv_number(rep.max_abs_err) << " " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive linear systems as phase-type distributions: convert, evaluate, verify"};
    app.require_subcommand(1);

    std::string input, scenario, rate_spec, format = "json", what, grid_spec, transform_path;
    bool raw_alpha = false;
    std::size_t samples = 1000;
    double u_level = 1.0;
    std::optional<std::uint64_t> seed_flag;

    auto* check = app.add_subcommand("check", "Report the transform hypotheses of a realization document");
    check->add_option("--input", input, "Realization JSON file")->required();

    auto* convert = app.add_subcommand("convert", "Transform a realization into a phase-type document");
    convert->add_option("--input", input, "Realization JSON file");
    convert->add_option("--scenario", scenario, "Built-in scenario: student, supply-chain, continuous-example");
    convert->add_option("--rates", rate_spec, "Scenario rate overrides, e.g. xi1=0.6,beta1=0.2");
    convert->add_option("--format", format, "Output format: json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* eval = app.add_subcommand("eval", "Evaluate a transform document: pdf, cdf, pmf, tpm, mean");
    eval->add_option("--input", input, "Transform JSON file")->required();
    eval->add_option("--what", what, "pdf | cdf | pmf | tpm | mean")->required();
    eval->add_option("--grid", grid_spec, "start:stop:step, a..b, or v1,v2,...");
    eval->add_flag("--raw-alpha", raw_alpha, "Evaluate under the raw alpha (point mass 1-psi at zero)");

    auto* simulate = app.add_subcommand("simulate", "Draw absorption-time samples from a transform document");
    simulate->add_option("--input", input, "Transform JSON file")->required();
    simulate->add_option("--samples", samples, "Number of samples (>= 1)")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed_flag, "RNG seed (default: PHASEFORGE_SEED or 0)");

    auto* compare = app.add_subcommand("compare", "Check the output identity y(t) = psi u F(t) on a grid");
    compare->add_option("--input", input, "Realization JSON file");
    compare->add_option("--scenario", scenario, "Built-in scenario name");
    compare->add_option("--rates", rate_spec, "Scenario rate overrides");
    compare->add_option("--u", u_level, "Constant input level")->required();
    compare->add_option("--grid", grid_spec, "start:stop:step or a..b")->required();
    compare->add_option("--transform", transform_path, "Reuse a serialized transform document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(input);
        if (convert->parsed()) return cmd_convert(input, scenario, rate_spec, format);
        if (eval->parsed()) return cmd_eval(input, what, grid_spec, raw_alpha);
        if (simulate->parsed()) return cmd_simulate(input, samples, seed_flag);
        if (compare->parsed()) return cmd_compare(input, scenario, rate_spec, u_level, grid_spec, transform_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisError& e) {
        std::cerr << "error: hypothesis \"" << e.hypothesis() << "\" failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
