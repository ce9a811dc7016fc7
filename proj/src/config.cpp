#include "bootlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "bootlab/estimators.hpp"
#include "bootlab/records.hpp"
#include "bootlab/validation.hpp"

namespace bootlab {

namespace {

enum class Kind { Int, Real, IntList, RealList, Choice, Text };

struct KeySpec {
    const char* name;
    Kind kind;
    double lo = 0, hi = 0;
    std::vector<std::string> choices = {};
};

const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"theta", Kind::Int, 1, 64},
        {"ell", Kind::Int, 1, 16},
        {"a", Kind::RealList, 0, 1e6},
        {"n", Kind::IntList, 1, 1e7},
        {"L", Kind::Int, 1, 1e5},
        {"trials", Kind::IntList, 1, 1e12},
        {"seed", Kind::Int, 0, 9.2e18},
        {"rule", Kind::Choice, 0, 0, {"XI", "CHI", "ZETA"}},
        {"mode", Kind::Choice, 0, 0, {"LOWER_IS", "UPPER_INERT", "DIRECT", "ALL"}},
        {"boundary", Kind::Choice, 0, 0, {"TORUS", "EMPTY_WALL", "OCCUPIED_WALL"}},
        {"fiber", Kind::Choice, 0, 0, {"HAMMING_SQUARE", "CLIQUE"}},
        {"init", Kind::Choice, 0, 0, {"XI_AEPS", "CHI_AEPS", "ZETA_POISSON", "POLLUTED"}},
        {"eps", Kind::RealList, 0, 1},
        {"p", Kind::Real, 0, 1},
        {"q", Kind::Real, 0, 1},
        {"r", Kind::Int, 0, 1000},
        {"d", Kind::Int, 0, 1e6},
        {"event", Kind::Text},
        {"threshold", Kind::Real, 0, 1},
        {"plane-trials", Kind::Int, 1, 1e9},
        {"sampling", Kind::Choice, 0, 0, {"AUTO", "EXACT", "TABULATED"}},
        {"max-cells", Kind::Int, 1, 4.6e18},
        {"out", Kind::Text},
        {"format", Kind::Choice, 0, 0, {"CSV", "JSON"}},
        {"dump", Kind::Text},
        {"dump-initial", Kind::Text},
    };
    return specs;
}

struct CommandSpec {
    std::set<std::string> required;
    std::set<std::string> optional;
    std::set<std::string> lists;  // keys that may hold several values
};

const std::map<std::string, CommandSpec>& command_specs() {
    static const std::set<std::string> io = {"out", "format"};
    auto with_io = [](std::set<std::string> s) {
        s.insert(io.begin(), io.end());
        return s;
    };
    static const std::map<std::string, CommandSpec> specs = {
        {"plane-stats", {{"theta", "a", "n", "trials", "seed"}, with_io({"ell", "r", "p", "max-cells"}), {}}},
        {"density",
         {{"theta", "a", "n", "L", "trials", "seed"},
          with_io({"ell", "mode", "boundary", "sampling", "plane-trials", "max-cells"}),
          {}}},
        {"phase-curve",
         {{"theta", "a", "n", "L", "trials", "seed"},
          with_io({"ell", "mode", "boundary", "sampling", "plane-trials", "max-cells"}),
          {"a"}}},
        {"sandwich-check",
         {{"theta", "n", "L", "trials", "seed"}, with_io({"a", "p", "fiber", "boundary", "max-cells"}), {}}},
        {"hetero-run",
         {{"L", "seed", "init"},
          with_io({"a", "eps", "ell", "theta", "p", "q", "boundary", "dump", "dump-initial"}),
          {}}},
        {"ac-scan",
         {{"ell", "a", "eps", "L", "trials", "seed"}, with_io({"threshold", "boundary", "init"}), {"a", "eps"}}},
        {"phi-curve", {{"theta", "a", "L", "trials", "seed"}, with_io({}), {"a"}}},
        {"rate-fit",
         {{"theta", "a", "n", "trials", "seed"}, with_io({"ell", "event", "r", "max-cells"}), {"n", "trials"}}},
        {"validate", {{}, with_io({"seed"}), {}}},
    };
    return specs;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\"'");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\"'");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_number(const std::string& key, const std::string& v, bool integral) {
    std::size_t used = 0;
    double x;
    try {
        x = integral ? static_cast<double>(std::stoull(v, &used)) : std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a valid " + (integral ? "integer" : "number"));
    }
    if (used != v.size() || (integral && v.find('-') != std::string::npos))
        throw ConfigError("key '" + key + "': '" + v + "' is not a valid " + (integral ? "integer" : "number"));
    if (!std::isfinite(x)) throw ConfigError("key '" + key + "': value must be finite");
    return x;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    return s;
}

void validate_value(const KeySpec& spec, const std::string& value, bool listAllowed) {
    const std::string key = spec.name;
    switch (spec.kind) {
        case Kind::Int:
        case Kind::Real:
        case Kind::IntList:
        case Kind::RealList: {
            const bool integral = spec.kind == Kind::Int || spec.kind == Kind::IntList;
            const auto items = split_list(value);
            if (items.empty() || std::any_of(items.begin(), items.end(), [](auto& s) { return s.empty(); }))
                throw ConfigError("key '" + key + "' has an empty value");
            if (items.size() > 1 && !listAllowed)
                throw ConfigError("key '" + key + "' takes a single value for this command");
            for (const auto& it : items) {
                const double x = parse_number(key, it, integral);
                if (x < spec.lo || x > spec.hi)
                    throw ConfigError("key '" + key + "': " + it + " is outside [" + std::to_string(spec.lo) + ", " +
                                      std::to_string(spec.hi) + "]");
            }
            break;
        }
        case Kind::Choice: {
            if (std::find(spec.choices.begin(), spec.choices.end(), upper(value)) == spec.choices.end()) {
                std::string all;
                for (const auto& c : spec.choices) all += (all.empty() ? "" : ", ") + c;
                throw ConfigError("key '" + key + "': '" + value + "' is not one of " + all);
            }
            break;
        }
        case Kind::Text:
            if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");
            break;
    }
}

}  // namespace

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

long long ExperimentConfig::integer(const std::string& key, long long fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : static_cast<long long>(std::stoull(it->second));
}

double ExperimentConfig::real(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stod(it->second);
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& s : split_list(text(key))) out.push_back(std::stod(s));
    return out;
}

std::vector<long long> ExperimentConfig::integers(const std::string& key) const {
    std::vector<long long> out;
    for (const auto& s : split_list(text(key))) out.push_back(static_cast<long long>(std::stoull(s)));
    return out;
}

std::string ExperimentConfig::to_text() const {
    std::string out = "command=" + command + "\n";
    for (const auto& [k, v] : params) out += k + "=" + v + "\n";
    if (quick) out += "quick=true\n";
    return out;
}

ExperimentConfig parse_config(const std::vector<std::string>& argsIn, const std::optional<std::filesystem::path>& file) {
    CLI::App app{"bootlab"};
    std::string command;
    app.add_option("command", command, "subcommand");
    std::map<std::string, std::vector<std::string>> raw;
    for (const auto& k : key_specs()) app.add_option(std::string("--") + k.name, raw[k.name]);
    bool quick = false;
    app.add_flag("--quick", quick);
    app.set_config("--config");
    app.allow_config_extras(false);

    std::vector<std::string> args = argsIn;
    if (file) {
        std::ifstream probe(*file);
        if (!probe) throw ConfigError("cannot read config file " + file->string());
        args.push_back("--config");
        args.push_back(file->string());
    }
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") {
            std::ifstream probe(args[i + 1]);
            if (!probe) throw ConfigError("cannot read config file " + args[i + 1]);
        }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    ExperimentConfig cfg;
    cfg.command = command;
    cfg.quick = quick;
    const auto& cmds = command_specs();
    auto cmdIt = cmds.find(command);
    if (cmdIt == cmds.end()) {
        std::string all;
        for (const auto& [name, spec] : cmds) all += (all.empty() ? "" : ", ") + name;
        throw ConfigError(command.empty() ? "no command given (expected one of " + all + ")"
                                          : "unknown command '" + command + "' (expected one of " + all + ")");
    }
    const CommandSpec& spec = cmdIt->second;
    for (const auto& k : key_specs()) {
        const auto& vals = raw[k.name];
        if (vals.empty()) continue;
        std::string joined;
        for (const auto& v : vals) joined += (joined.empty() ? "" : ",") + trim(v);
        if (!spec.required.count(k.name) && !spec.optional.count(k.name))
            throw ConfigError("key '" + std::string(k.name) + "' is not used by " + command);
        validate_value(k, joined, spec.lists.count(k.name) != 0);
        cfg.params[k.name] = k.kind == Kind::Choice ? upper(joined) : joined;
    }
    if (quick && command != "validate") throw ConfigError("--quick only applies to validate");

    std::vector<std::string> missing;
    for (const auto& k : spec.required)
        if (!cfg.has(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::string all;
        for (const auto& m : missing) all += (all.empty() ? "" : ", ") + ("--" + m);
        throw ConfigError("missing required key(s) for " + command + ": " + all);
    }

    // Cross-key consistency.
    if (cfg.has("ell") && cfg.has("theta") && command != "hetero-run") {
        const long long theta = cfg.integer("theta");
        if (theta < 3) throw ConfigError("key 'theta' must be at least 3 for the density scalings");
        if (ell_for_theta(static_cast<int>(theta)) != cfg.integer("ell"))
            throw ConfigError("conflicting keys: ell=" + cfg.text("ell") + " does not match theta=" + cfg.text("theta"));
    }
    if (cfg.has("p") && cfg.has("a") && command != "hetero-run")
        throw ConfigError("conflicting keys: give either p or a, not both");
    if (command == "rate-fit") {
        const auto ns = cfg.integers("n");
        const auto ts = cfg.integers("trials");
        if (ns.size() < 3) throw ConfigError("rate-fit needs at least three values of n");
        if (ts.size() != 1 && ts.size() != ns.size())
            throw ConfigError("conflicting keys: trials must be one value or one per n");
    }
    if (command == "sandwich-check" && !cfg.has("a") && !cfg.has("p"))
        throw ConfigError("missing required key(s) for sandwich-check: --a or --p");
    if (command == "hetero-run") {
        const std::string init = cfg.text("init");
        if (init == "POLLUTED") {
            if (!cfg.has("p") || !cfg.has("q")) throw ConfigError("missing required key(s) for polluted: --p, --q");
            if (cfg.real("p") + cfg.real("q") > 1) throw ConfigError("key 'p' plus key 'q' must not exceed 1");
        } else if (!cfg.has("a")) {
            throw ConfigError("missing required key(s) for " + init + ": --a");
        }
    }
    return cfg;
}

namespace {

struct Output {
    std::optional<std::filesystem::path> path;
    RecordFormat format = RecordFormat::Csv;
};

Output resolve_output(const ExperimentConfig& cfg) {
    Output o;
    const char* dir = std::getenv(kOutputDirEnv);
    if (cfg.has("format")) o.format = parse_format(cfg.text("format"));
    if (cfg.has("out")) {
        std::filesystem::path p = cfg.text("out");
        if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
        o.path = p;
        if (!cfg.has("format") && p.extension() == ".json") o.format = RecordFormat::Json;
    } else if (dir && *dir) {
        o.path = std::filesystem::path(dir) / (cfg.command + (o.format == RecordFormat::Json ? ".json" : ".csv"));
    }
    return o;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << body;
        if (!out) throw IoError("failed while writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move output into place at " + path.string());
}

DensityParams density_params(const ExperimentConfig& cfg, double a) {
    DensityParams d;
    d.theta = static_cast<int>(cfg.integer("theta"));
    d.a = a;
    d.n = static_cast<int>(cfg.integer("n"));
    d.L = static_cast<int>(cfg.integer("L"));
    d.boundary = parse_boundary(cfg.text("boundary", "EMPTY_WALL"));
    const std::string s = cfg.text("sampling", "AUTO");
    d.sampling = s == "EXACT" ? LabelSampling::Exact : s == "TABULATED" ? LabelSampling::Tabulated : LabelSampling::Auto;
    d.planeTrials = static_cast<std::uint64_t>(cfg.integer("plane-trials", 10000));
    d.maxCells = static_cast<std::uint64_t>(cfg.integer("max-cells", static_cast<long long>(kDefaultMaxCells)));
    return d;
}

void add_density_records(const ExperimentConfig& cfg, double a, std::vector<EstimateRecord>& recs) {
    DensityParams d = density_params(cfg, a);
    const auto trials = static_cast<std::uint64_t>(cfg.integer("trials"));
    const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    const std::string mode = cfg.text("mode", "LOWER_IS");
    if (mode == "ALL") {
        const auto c = coupled_density(d, trials, seed);
        recs.push_back(c.lower);
        recs.push_back(c.direct);
        recs.push_back(c.upper);
        if (c.orderViolations) throw std::logic_error("coupled estimates broke the pathwise order");
        return;
    }
    d.mode = parse_density_mode(mode);
    recs.push_back(two_scale_density(d, trials, seed));
}

int run_validate(const ExperimentConfig& cfg, std::ostream& summary) {
    const auto results = run_validation(cfg.quick, static_cast<std::uint64_t>(cfg.integer("seed", 1)));
    bool all = true;
    for (const auto& r : results) {
        summary << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases << " cases";
        if (r.relevant) summary << ", " << r.relevant << " with premise";
        summary << ")" << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

}  // namespace

int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    const Output o = resolve_output(cfg);
    std::ostream& summary = o.path ? out : err;
    std::vector<EstimateRecord> recs;
    int code = 0;
    const auto seed = static_cast<std::uint64_t>(cfg.integer("seed", 1));
    const std::string& cmd = cfg.command;

    if (cmd == "validate") return run_validate(cfg, out);

    if (cmd == "plane-stats") {
        McParams m;
        m.theta = static_cast<int>(cfg.integer("theta"));
        m.a = cfg.real("a");
        m.n = static_cast<int>(cfg.integer("n"));
        if (cfg.has("p")) m.p = cfg.real("p");
        m.maxCells = static_cast<std::uint64_t>(cfg.integer("max-cells", static_cast<long long>(kDefaultMaxCells)));
        const auto trials = static_cast<std::uint64_t>(cfg.integer("trials"));
        std::vector<int> rs;
        if (cfg.has("r")) {
            rs.push_back(static_cast<int>(cfg.integer("r")));
        } else {
            for (int k = 0; k <= 4; ++k)
                if (m.theta - k >= 1) rs.push_back(m.theta - k);
        }
        for (int r : rs)
            for (const char* ev : {"plane-is", "plane-ii"}) {
                const auto rec = mc_probability(parse_event(ev, r), m, trials, seed);
                summary << ev << " r=" << r << ": " << fmt(rec.estimate) << " +- " << fmt(rec.standardError) << "\n";
                recs.push_back(rec);
            }
    } else if (cmd == "density" || cmd == "phase-curve") {
        for (double a : cfg.reals("a")) add_density_records(cfg, a, recs);
        for (const auto& r : recs)
            summary << r.mode << " a=" << fmt(*r.a) << ": " << fmt(r.estimate) << " +- " << fmt(r.standardError)
                    << "\n";
    } else if (cmd == "sandwich-check") {
        const int theta = static_cast<int>(cfg.integer("theta"));
        const int n = static_cast<int>(cfg.integer("n"));
        const int L = static_cast<int>(cfg.integer("L"));
        const Fiber fiber = parse_fiber(cfg.text("fiber", "HAMMING_SQUARE"));
        const BoxGeometry geom{L, L, parse_boundary(cfg.text("boundary", "EMPTY_WALL"))};
        geom.validate();
        check_cells(product_cells(geom, fiber, n),
                    static_cast<std::uint64_t>(cfg.integer("max-cells", static_cast<long long>(kDefaultMaxCells))));
        double p;
        if (cfg.has("p"))
            p = cfg.real("p");
        else
            p = fiber == Fiber::Clique ? cfg.real("a") / n : scaled_density(theta, cfg.real("a"), n);
        if (p > 1) throw std::invalid_argument("the density exceeds 1");
        const auto trials = static_cast<std::uint64_t>(cfg.integer("trials"));
        std::uint64_t passed = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = trial_rng(seed, t);
            const auto rep = sandwich_check(sample_product(geom, fiber, n, p, theta, rng));
            if (rep.ok) {
                ++passed;
            } else if (code == 0) {
                code = 1;
                summary << "instance " << t << ": violation at (" << rep.firstViolation->x << ","
                        << rep.firstViolation->y << "): " << rep.detail << "\n";
            }
        }
        EstimateRecord rec;
        rec.experiment = "sandwich-check";
        rec.theta = theta;
        if (cfg.has("a")) rec.a = cfg.real("a");
        rec.n = n;
        rec.L = L;
        rec.mode = to_string(fiber) + (cfg.has("p") ? ";p=" + cfg.text("p") : "");
        rec.boundary = to_string(geom.boundary);
        rec.seed = seed;
        rec.set_counts(trials, passed);
        recs.push_back(rec);
        summary << "sandwich inclusions held on " << passed << " of " << trials << " instances\n";
    } else if (cmd == "hetero-run") {
        const int L = static_cast<int>(cfg.integer("L"));
        const BoxGeometry geom{L, L, parse_boundary(cfg.text("boundary", "EMPTY_WALL"))};
        geom.validate();
        Rng rng = trial_rng(seed, 0);
        const std::string init = cfg.text("init");
        HeteroGrid g0;
        EstimateRecord rec;
        rec.experiment = "hetero-run";
        if (init == "POLLUTED") {
            g0 = polluted_grid(geom, cfg.real("p"), cfg.real("q"), rng);
            rec.mode = "POLLUTED;p=" + cfg.text("p") + ";q=" + cfg.text("q");
        } else {
            const LimitVariant v = parse_limit_variant(init);
            const int ell = static_cast<int>(cfg.integer("ell", v == LimitVariant::ChiAeps ? 1 : 2));
            const int theta = static_cast<int>(cfg.integer("theta", v == LimitVariant::ZetaPoisson ? 3 : 2 * ell + 1));
            const LimitParams lp{cfg.real("a"), cfg.real("eps", 0.0), ell, theta};
            g0 = init_limit_grid(lp, v, geom, rng);
            rec.theta = theta;
            rec.ell = ell;
            rec.a = lp.a;
            rec.mode = init + ";eps=" + cfg.text("eps", "0");
        }
        const auto fin = hetero_fixpoint(g0);
        const auto cl = zero_clusters(fin);
        std::uint64_t zeros = 0;
        for (auto s : fin.states) zeros += s == 0;
        rec.L = L;
        rec.rule = to_string(g0.rule);
        rec.boundary = to_string(geom.boundary);
        rec.seed = seed;
        rec.set_counts(geom.sites(), zeros);
        recs.push_back(rec);
        const int oid = cl.label[geom.index(geom.origin())];
        summary << "zero sites " << zeros << " of " << geom.sites() << ", clusters " << cl.clusters.size()
                << ", max diameter " << cl.maxDiameter << ", origin "
                << (oid >= 0 ? "in a cluster of diameter " + std::to_string(cl.clusters[oid].diameter) : "nonzero")
                << "\n";
        if (cfg.has("dump")) write_text_file(cfg.text("dump"), to_text(fin));
        if (cfg.has("dump-initial")) write_text_file(cfg.text("dump-initial"), to_text(g0));
    } else if (cmd == "ac-scan") {
        AcScanParams ps;
        ps.ell = static_cast<int>(cfg.integer("ell"));
        ps.epsList = cfg.reals("eps");
        ps.aGrid = cfg.reals("a");
        ps.L = static_cast<int>(cfg.integer("L"));
        ps.trials = static_cast<std::uint64_t>(cfg.integer("trials"));
        ps.seed = seed;
        ps.threshold = cfg.real("threshold", 0.05);
        ps.boundary = parse_boundary(cfg.text("boundary", "EMPTY_WALL"));
        ps.variant = parse_limit_variant(cfg.text("init", ps.ell == 1 ? "CHI_AEPS" : "XI_AEPS"));
        const auto res = ac_scan(ps);
        recs = res.records;
        summary << "crossing of " << fmt(res.threshold) << " on the eps=" << fmt(res.smallestEps) << " curve: "
                << (res.crossing ? "a=" + fmt(*res.crossing) : std::string("not reached on the grid")) << "\n";
    } else if (cmd == "phi-curve") {
        const int theta = static_cast<int>(cfg.integer("theta"));
        for (double a : cfg.reals("a")) {
            auto [wall, zero] = phi_estimate(a, theta, static_cast<int>(cfg.integer("L")),
                                             static_cast<std::uint64_t>(cfg.integer("trials")), seed);
            summary << "a=" << fmt(a) << ": [" << fmt(wall.estimate) << ", " << fmt(zero.estimate) << "]\n";
            recs.push_back(wall);
            recs.push_back(zero);
        }
    } else if (cmd == "rate-fit") {
        McParams m;
        m.theta = static_cast<int>(cfg.integer("theta"));
        m.a = cfg.real("a");
        m.maxCells = static_cast<std::uint64_t>(cfg.integer("max-cells", static_cast<long long>(kDefaultMaxCells)));
        const int r = static_cast<int>(cfg.integer("r", m.theta - 2));
        const EventSpec ev = parse_event(cfg.text("event", "not-plane-is"), r);
        const auto ns = cfg.integers("n");
        const auto ts = cfg.integers("trials");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            m.n = static_cast<int>(ns[i]);
            const auto rec = mc_probability(ev, m, static_cast<std::uint64_t>(ts.size() == 1 ? ts[0] : ts[i]), seed);
            pts.emplace_back(static_cast<double>(ns[i]), rec.estimate);
            recs.push_back(rec);
        }
        for (const auto& [n, e] : pts)
            if (e <= 0) {
                err << "no successes at n=" << n << "; raise trials to fit a rate\n";
                return 2;
            }
        const auto fit = rate_fit(pts);
        summary << "exponent " << fmt(fit.exponent) << ", prefactor " << fmt(fit.prefactor) << "\n";
    }

    if (o.path)
        write_records(recs, *o.path, o.format);
    else
        out << render_records(recs, o.format);
    return code;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        out << "usage: bootlab <command> [--key value ...] [--config file]\n"
               "commands: plane-stats density phase-curve sandwich-check hetero-run ac-scan phi-curve rate-fit "
               "validate\n";
        return args.empty() ? 2 : 0;
    }
    ExperimentConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    }
    try {
        return run_command(cfg, out, err);
    } catch (const IoError& e) {
        err << "output error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bootlab
