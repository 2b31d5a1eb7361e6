#include "cli.hpp"

#include "greedysum/errors.hpp"
#include "greedysum/experiments.hpp"
#include "greedysum/parallel.hpp"
#include "greedysum/props.hpp"
#include "greedysum/sampling.hpp"
#include "greedysum/tga.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace greedysum::cli {

namespace pt = boost::property_tree;

// ---------------------------------------------------------------- config

std::string serialize(const RunConfig& config) {
    pt::ptree tree;
    if (config.space) {
        pt::ptree space;
        for (const auto& [k, v] : to_config_section(*config.space)) space.put(k, v);
        tree.add_child("space", space);
    }
    pt::ptree run;
    run.put("seed", config.seed);
    run.put("format", config.format == OutputFormat::json ? "json" : "csv");
    run.put("output", config.output);
    tree.add_child("run", run);
    if (!config.params.empty()) {
        pt::ptree params;
        for (const auto& [k, v] : config.params) params.put(k, v);
        tree.add_child("params", params);
    }
    std::ostringstream os;
    pt::write_ini(os, tree);
    return os.str();
}

namespace {

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || text.front() == '-')
        throw std::invalid_argument(what + " must be a nonnegative integer, got '" + text + "'");
    return v;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw std::invalid_argument("format must be csv or json, got '" + text + "'");
}

std::map<std::string, std::string> flat(const pt::ptree& section) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : section) out[k] = v.data();
    return out;
}

}  // namespace

RunConfig parse_config(std::string_view ini_text) {
    pt::ptree tree;
    std::istringstream is{std::string(ini_text)};
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    RunConfig config;
    for (const auto& [name, section] : tree) {
        if (name == "space") {
            config.space = space_from_config(flat(section));
        } else if (name == "run") {
            for (const auto& [k, v] : flat(section)) {
                if (k == "seed") config.seed = parse_u64(v, "seed");
                else if (k == "format") config.format = parse_format(v);
                else if (k == "output") config.output = v;
                else throw std::invalid_argument("config: unknown key [run] " + k);
            }
        } else if (name == "params") {
            config.params = flat(section);
        } else {
            throw std::invalid_argument("config: unknown section [" + name + "]");
        }
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

namespace {

// ------------------------------------------------------------ parameters

/// String-valued options of one subcommand. Lookup order: command line,
/// then [params] in the config, then the default.
class Params {
public:
    explicit Params(CLI::App* app) : app_(app) {}

    void add(const std::string& name, std::string fallback, const std::string& help) {
        defaults_[name] = std::move(fallback);
        app_->add_option("--" + name, values_[name], help);
    }
    void add_list(const std::string& name, const std::string& help) {
        app_->add_option("--" + name, lists_[name], help)->allow_extra_args(false);
    }

    bool given(const std::string& name) const {
        return app_->count("--" + name) > 0 || (config_ && config_->params.count(name) > 0);
    }
    std::string get(const std::string& name) const {
        if (app_->count("--" + name) > 0) return values_.at(name);
        if (config_) {
            auto it = config_->params.find(name);
            if (it != config_->params.end()) return it->second;
        }
        if (required_.count(name) > 0) throw std::invalid_argument("missing --" + name);
        return defaults_.at(name);
    }
    void require(const std::string& name) {
        required_.insert(name);
        app_->get_option("--" + name)->description(app_->get_option("--" + name)->get_description() + " (required)");
    }
    const std::vector<std::string>& list(const std::string& name) const { return lists_.at(name); }

    Rational rational(const std::string& name) const { return parse_rational(get(name)); }
    std::size_t size(const std::string& name) const { return parse_u64(get(name), "--" + name); }
    std::optional<Rational> optional_rational(const std::string& name) const {
        if (!given(name)) return std::nullopt;
        return rational(name);
    }

    void bind(const RunConfig* config) { config_ = config; }
    CLI::App* app() const { return app_; }

private:
    CLI::App* app_;
    const RunConfig* config_ = nullptr;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> defaults_;
    std::map<std::string, std::vector<std::string>> lists_;
    std::set<std::string> required_;
};

const std::vector<std::string> kSpaceKeys = {"lambda1", "lambda2", "a1", "a2", "a3", "a4", "p", "g", "levels"};

void add_space_options(Params& p) {
    p.add("space", "", "space kind: xpg | xw | xiso | xs (default: config, else xpg preset)");
    for (const auto& key : kSpaceKeys) p.add(key, "", "xpg parameter " + key);
    p.add("iso-lambda", "", "lambda of xiso (default 3)");
}

SpaceSpec resolve_space(const Params& p, const RunConfig& config) {
    std::map<std::string, std::string> section;
    if (config.space) {
        for (const auto& [k, v] : to_config_section(*config.space)) section[k] = v;
    }
    if (p.app()->count("--space") > 0) {
        const std::string kind = p.get("space");
        if (!config.space || config.space->name() != kind) section = {{"kind", kind}};
    }
    if (section.empty()) section["kind"] = "xpg";
    bool xpg_override = false;
    for (const auto& key : kSpaceKeys) {
        if (p.app()->count("--" + key) == 0) continue;
        section[key] = p.get(key);
        xpg_override = true;
    }
    if (xpg_override && section["kind"] == "xpg" && p.app()->count("--levels") > 0) {
        // A new level count regenerates g unless g itself was given.
        if (p.app()->count("--g") == 0) section.erase("g");
    }
    if (xpg_override && section["kind"] == "xpg") {
        // Derived parameters follow explicitly changed lambdas.
        if (p.app()->count("--lambda1") > 0 || p.app()->count("--lambda2") > 0) {
            for (const char* key : {"a1", "a2", "a3", "a4", "p", "g"})
                if (p.app()->count(std::string("--") + key) == 0) section.erase(key);
        }
    }
    if (p.app()->count("--iso-lambda") > 0) section["lambda"] = p.get("iso-lambda");
    return space_from_config(section);
}

// ---------------------------------------------------------------- output

struct Sink {
    std::ostream& out;
    std::ostream& err;
    const RunConfig& config;

    void emit(const std::string& text) const {
        if (config.output.empty()) {
            out << text;
            return;
        }
        std::ofstream file(config.output);
        if (!file) throw std::invalid_argument("cannot write '" + config.output + "'");
        file << text;
    }
};

int emit_reports(const Sink& sink, const std::vector<PropertyReport>& reports, const std::optional<Rational>& bound) {
    bool violated = false;
    std::ostringstream os;
    if (sink.config.format == OutputFormat::json) os << "[\n";
    else os << report_csv_header() << '\n';
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const bool over = bound && reports[k].worst_ratio > Real(*bound);
        violated = violated || over;
        if (sink.config.format == OutputFormat::json) {
            auto j = nlohmann::ordered_json::parse(report_json(reports[k]));
            j["violation"] = over;
            if (!over) j["witness"] = "";
            os << "  " << j.dump() << (k + 1 < reports.size() ? ",\n" : "\n");
        } else {
            os << report_csv_row(reports[k], over) << '\n';
        }
    }
    if (sink.config.format == OutputFormat::json) os << "]\n";
    sink.emit(os.str());
    return violated ? 1 : 0;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_rational(item));
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_u64(item, "list entry"));
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::vector<SparseVector> corpus(const Params& p, const SpaceSpec& spec, std::uint64_t seed) {
    std::vector<SparseVector> out;
    for (const auto& lit : p.list("vec")) out.push_back(parse_vector(lit));
    if (!out.empty()) return out;
    const std::size_t trials = p.size("trials");
    const VectorSampler sampler = default_sampler(spec);
    return parallel_map(trials, [&](std::size_t i) {
        auto rng = instance_rng(seed, i);
        return sample_vector(rng, sampler);
    });
}

// --------------------------------------------------------------- commands

using Handler = std::function<int(const Sink&)>;

struct Command {
    std::unique_ptr<Params> params;
    Handler handler;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thresholding greedy algorithm, sequence space norms and greedy-type property checks", "greedysum"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    std::string seed_text;
    std::string format_text;
    std::string output_path;
    app.add_option("--config", config_path, std::string("INI config (default: $") + kConfigEnv + ")");
    app.add_option("--seed", seed_text, "64-bit seed for sampled runs");
    app.add_option("--format", format_text, "csv | json");
    app.add_option("--output", output_path, "write the report here instead of stdout");

    RunConfig config;
    std::vector<Command> commands;
    auto command = [&](CLI::App* sub) -> Params& {
        sub->fallthrough();
        commands.push_back({std::make_unique<Params>(sub), nullptr});
        return *commands.back().params;
    };
    auto on_run = [&](Handler h) { commands.back().handler = std::move(h); };

    // norm
    {
        Params& p = command(app.add_subcommand("norm", "evaluate a vector literal in a space"));
        add_space_options(p);
        p.add("vec", "", "vector literal, e.g. \"16:1,17:-1/2\"");
        p.require("vec");
        p.app()->add_flag("--oracle", "use the brute-force oracle");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            const SparseVector x = parse_vector(p.get("vec"));
            const bool oracle = p.app()->count("--oracle") > 0;
            const Real v = oracle ? norm_oracle(x, spec) : norm(x, spec);
            if (sink.config.format == OutputFormat::json) {
                nlohmann::ordered_json j;
                j["space"] = spec.name();
                j["vector"] = to_string(x);
                j["norm"] = to_string(v);
                j["exact"] = v.is_exact();
                j["evaluator"] = oracle ? "oracle" : "structured";
                sink.emit(j.dump() + "\n");
            } else {
                sink.emit(to_string(v) + "\n");
            }
            return 0;
        });
    }

    // greedy
    {
        Params& p = command(app.add_subcommand("greedy", "list the greedy sets of order m and their residuals"));
        add_space_options(p);
        p.add("vec", "", "vector literal");
        p.require("vec");
        p.add("m", "1", "order");
        p.add("cap", std::to_string(kDefaultGreedyCap), "most greedy sets to enumerate");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            const SparseVector x = parse_vector(p.get("vec"));
            const std::size_t m = p.size("m");
            const GreedyOutcome g = greedy_sets(x, m, p.size("cap"));
            std::ostringstream os;
            if (sink.config.format == OutputFormat::json) {
                nlohmann::ordered_json j;
                j["m"] = m;
                j["threshold"] = to_string(g.tie.threshold);
                auto& sets = j["sets"] = nlohmann::ordered_json::array();
                for (const auto& s : g.sets) {
                    const SparseVector r = residual(x, s);
                    sets.push_back({{"greedy", to_string(s)},
                                    {"residual", to_string(r)},
                                    {"residual_norm", to_string(norm(r, spec))}});
                }
                os << j.dump() << '\n';
            } else {
                os << "m,greedy,residual,residual_norm\n";
                for (const auto& s : g.sets) {
                    const SparseVector r = residual(x, s);
                    os << m << ",\"" << to_string(s) << "\",\"" << to_string(r) << "\"," << to_string(norm(r, spec))
                       << '\n';
                }
            }
            sink.emit(os.str());
            return 0;
        });
    }

    // check
    CLI::App* check = app.add_subcommand("check", "one property instance or a family sweep");
    check->require_subcommand(1);
    check->fallthrough();
    auto check_command = [&](const std::string& name, const std::string& help) -> Params& {
        Params& p = command(check->add_subcommand(name, help));
        add_space_options(p);
        p.add("bound", "", "report a witness and exit 1 when the ratio exceeds this");
        return p;
    };
    {
        Params& p = check_command("residual", "greedy residual vs the family's competitors");
        p.add("vec", "", "vector literal");
        p.require("vec");
        p.add("m", "1", "competitor size m (greedy order ceil(lambda m))");
        p.add("lambda", "1", "enlargement factor");
        p.add("family", "ag2", "ag | ag2 | pg | pg2 | rpg2");
        p.add("cap", std::to_string(kDefaultGreedyCap), "most greedy sets to enumerate");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            auto r = residual_ratio(spec, parse_vector(p.get("vec")), p.size("m"), p.rational("lambda"),
                                    parse_family(p.get("family")), p.size("cap"));
            return emit_reports(sink, {r}, p.optional_rational("bound"));
        });
    }
    {
        Params& p = check_command("pair", "||1_A|| / ||1_B|| under a democracy flavor");
        p.add("A", "", "index set, e.g. 19,20 or 16..19");
        p.add("B", "", "index set");
        p.require("A");
        p.require("B");
        p.add("lambda", "1", "enlargement factor");
        p.add("flavor", "democratic", "democratic | max-conservative | democratic-t2");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            auto r = set_pair_ratio(spec, parse_index_set(p.get("A")), parse_index_set(p.get("B")),
                                    p.rational("lambda"), parse_pair_flavor(p.get("flavor")));
            return emit_reports(sink, {r}, p.optional_rational("bound"));
        });
    }
    {
        Params& p = check_command("pair-sweep", "exhaustive set-pair sweep over [1..radius]");
        p.add("lambda", "1", "enlargement factor");
        p.add("flavor", "democratic", "democratic | max-conservative | democratic-t2");
        p.add("radius", "10", "largest index (at most 20)");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            auto r = set_pair_sweep(spec, p.rational("lambda"), parse_pair_flavor(p.get("flavor")), p.size("radius"));
            return emit_reports(sink, {r}, p.optional_rational("bound"));
        });
    }
    {
        Params& p = check_command("slc2", "||x + 1_{eps A}|| / ||x + 1_{delta B}||");
        p.add("vec", "", "vector literal (may be empty)");
        p.add("A", "", "index set");
        p.add("B", "", "index set");
        p.require("A");
        p.require("B");
        p.add("eps", "", "signs on A, e.g. 3:-1,4:1 (default +1)");
        p.add("delta", "", "signs on B (default +1)");
        p.add("lambda", "1", "enlargement factor");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            auto r = slc2_instance(spec, parse_vector(p.get("vec")), parse_index_set(p.get("A")),
                                   parse_index_set(p.get("B")), parse_signs(p.get("eps")),
                                   parse_signs(p.get("delta")), p.rational("lambda"));
            return emit_reports(sink, {r}, p.optional_rational("bound"));
        });
    }
    {
        Params& p = check_command("qg", "quasi-greedy and suppression constants over a corpus");
        p.add_list("vec", "corpus vector (repeatable); sampled when absent");
        p.add("trials", "1000", "sampled corpus size");
        p.add("cap", std::to_string(kDefaultGreedyCap), "most greedy sets per order");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            const auto xs = corpus(p, spec, config.seed);
            const std::size_t cap = p.size("cap");
            const auto parts = parallel_map(xs.size(), [&](std::size_t i) {
                return qg_constants(spec, std::span<const SparseVector>(&xs[i], 1), cap);
            });
            QgReport total = parts.empty() ? QgReport{} : parts.front();
            for (std::size_t i = 1; i < parts.size(); ++i) {
                absorb(total.quasi_greedy, parts[i].quasi_greedy);
                absorb(total.suppression, parts[i].suppression);
            }
            if (p.list("vec").empty()) {
                total.quasi_greedy.seed = total.suppression.seed = config.seed;
                total.quasi_greedy.exhaustive = total.suppression.exhaustive = false;
            }
            return emit_reports(sink, {total.quasi_greedy, total.suppression}, p.optional_rational("bound"));
        });
    }
    {
        Params& p = check_command("truncation", "max ||T_a(x)|| / ||x|| over a corpus");
        p.add_list("vec", "corpus vector (repeatable); sampled when absent");
        p.add("trials", "1000", "sampled corpus size");
        p.add("levels-grid", "1/4,1/2,1,2", "truncation levels a");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            const auto xs = corpus(p, spec, config.seed);
            const auto grid = parse_rational_list(p.get("levels-grid"));
            const auto parts = parallel_map(xs.size(), [&](std::size_t i) {
                return truncation_check(spec, std::span<const SparseVector>(&xs[i], 1), grid);
            });
            PropertyReport total;
            total.property = "truncation";
            for (const auto& part : parts) absorb(total, part);
            if (p.list("vec").empty()) {
                total.seed = config.seed;
                total.exhaustive = false;
            }
            return emit_reports(sink, {total}, p.optional_rational("bound"));
        });
    }
    {
        Params& p = check_command("ul", "UL inequalities for sum a_n e_n on A");
        p.add("A", "", "index set");
        p.require("A");
        p.add("coeffs", "", "coefficients a_n in the order of A");
        p.require("coeffs");
        p.add("cqg", "1", "quasi-greedy constant C");
        on_run([&p, &config](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            const auto coeffs = parse_rational_list(p.get("coeffs"));
            auto r = ul_check(spec, parse_index_set(p.get("A")), coeffs, p.rational("cqg"));
            // The UL ratio is at most 1 exactly when both inequalities hold.
            const auto bound = p.given("bound") ? p.optional_rational("bound") : std::optional<Rational>(1);
            return emit_reports(sink, {r}, bound);
        });
    }

    // experiment
    CLI::App* experiment = app.add_subcommand("experiment", "run a named experiment");
    experiment->require_subcommand(1);
    experiment->fallthrough();
    auto emit_experiment = [](const Sink& sink, const ExperimentResult& r) {
        sink.emit(sink.config.format == OutputFormat::json ? r.to_json() + "\n" : r.to_csv());
        sink.err << r.name << ": " << (r.pass() ? "pass" : "fail") << " (" << r.violation_count()
                 << " violation rows)\n";
        return r.pass() ? 0 : 1;
    };
    {
        Params& p = command(experiment->add_subcommand("pg-separation", "lambda2-PG but not lambda1-PG in Xpg"));
        add_space_options(p);
        p.add("j-lo", "2", "first level");
        p.add("j-hi", "4", "last level");
        p.add("radius", "14", "exhaustive sweep radius (0 skips the sweep)");
        on_run([&p, &config, emit_experiment](const Sink& sink) {
            const SpaceSpec spec = resolve_space(p, config);
            const auto* xpg = std::get_if<XpgSpace>(&spec.kind());
            if (!xpg) throw std::invalid_argument("pg-separation needs an xpg space");
            return emit_experiment(sink, run_pg_separation(xpg->params, p.size("j-lo"), p.size("j-hi"),
                                                           p.size("radius")));
        });
    }
    {
        Params& p = command(experiment->add_subcommand("xw-divergence", "Xw is not democratic"));
        p.add("n", "4,12,100,10000", "comma-separated N values");
        on_run([&p, emit_experiment](const Sink& sink) {
            return emit_experiment(sink, run_xw_divergence(parse_size_list(p.get("n"))));
        });
    }
    {
        Params& p = command(experiment->add_subcommand("iso-threshold", "the isometric threshold at lambda = 2"));
        p.add("lambda", "3/2,2,3", "comma-separated lambda values");
        p.add("trials", "10000", "AG2 instances per lambda > 2");
        on_run([&p, &config, emit_experiment](const Sink& sink) {
            auto r = run_iso_threshold(parse_rational_list(p.get("lambda")), p.size("trials"), config.seed);
            return emit_experiment(sink, r);
        });
    }
    {
        Params& p = command(experiment->add_subcommand("xs-hierarchy", "Xs is PG but not 2-democratic of type 2"));
        p.add("n", "1,2,4,8,16,32,64", "comma-separated N values");
        p.add("trials", "1000", "sampled PG2 instances");
        on_run([&p, &config, emit_experiment](const Sink& sink) {
            auto r = run_xs_hierarchy(parse_size_list(p.get("n")), p.size("trials"), config.seed);
            return emit_experiment(sink, r);
        });
    }
    {
        Params& p = command(experiment->add_subcommand("hierarchy-ordering", "competitor infimum ordering"));
        add_space_options(p);
        p.add("trials", "1000", "sampled instances");
        on_run([&p, &config, emit_experiment](const Sink& sink) {
            auto r = run_hierarchy_ordering(resolve_space(p, config), p.size("trials"), config.seed);
            return emit_experiment(sink, r);
        });
    }
    {
        Params& p = command(experiment->add_subcommand("oracle-fuzz", "structured norms vs brute-force oracles"));
        p.add("spaces", "xpg,xw,xiso,xs", "comma-separated space kinds (default parameters)");
        p.add("trials", "1000", "vectors per space");
        on_run([&p, &config, emit_experiment](const Sink& sink) {
            std::vector<SpaceSpec> specs;
            std::stringstream ss(p.get("spaces"));
            std::string kind;
            while (std::getline(ss, kind, ',')) {
                if (config.space && config.space->name() == kind) specs.push_back(*config.space);
                else specs.push_back(space_from_config({{"kind", kind}}));
            }
            return emit_experiment(sink, run_oracle_fuzz(specs, p.size("trials"), config.seed));
        });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (config_path.empty()) {
            if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
        }
        if (!config_path.empty()) config = load_config(config_path);
        if (!seed_text.empty()) config.seed = parse_u64(seed_text, "--seed");
        if (!format_text.empty()) config.format = parse_format(format_text);
        if (!output_path.empty()) config.output = output_path;

        for (auto& c : commands) {
            if (!c.params->app()->parsed()) continue;
            c.params->bind(&config);
            return c.handler(Sink{out, err, config});
        }
        err << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace greedysum::cli
