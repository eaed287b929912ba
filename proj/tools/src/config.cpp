#include "anosov_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "anosov/errors.hpp"

namespace anosov::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
    }
    return out;
}

template <typename T>
std::string show(const T& v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Key {
    const char* name;
    const char* help;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T, typename Member>
Key numeric(const char* name, const char* help, Member member) {
    return {name, help,
            [name, member](RunConfig& c, const std::string& v) { member(c) = parse_number<T>(name, v); },
            [member](const RunConfig& c) {
                RunConfig copy = c;
                return show(member(copy));
            }};
}

const std::vector<Key>& keys() {
    static const std::vector<Key> table = {
        numeric<double>("lambda", "contraction factor in (0, 1)", [](RunConfig& c) -> double& { return c.params.lambda; }),
        numeric<int>("n", "linking number", [](RunConfig& c) -> int& { return c.params.n; }),
        numeric<int>("m", "multiplicity", [](RunConfig& c) -> int& { return c.params.m; }),
        numeric<int>("p", "component count", [](RunConfig& c) -> int& { return c.params.p; }),
        numeric<double>("r1", "outer scale of V", [](RunConfig& c) -> double& { return c.params.r1; }),
        numeric<double>("r2", "inner scale of V", [](RunConfig& c) -> double& { return c.params.r2; }),
        numeric<double>("t1", "interior-time bound (negative: re-entry bound)", [](RunConfig& c) -> double& { return c.t1; }),
        numeric<double>("r1_ref", "radius the re-entry bound and halvings start from", [](RunConfig& c) -> double& { return c.r1_ref; }),
        numeric<double>("ratio", "r2 / r1 kept by the search", [](RunConfig& c) -> double& { return c.ratio; }),
        numeric<int>("budget", "maximal number of halvings", [](RunConfig& c) -> int& { return c.budget; }),
        numeric<int>("grid", "constant-estimation grid size", [](RunConfig& c) -> int& { return c.grid; }),
        numeric<std::size_t>("words", "sampled words per suite", [](RunConfig& c) -> std::size_t& { return c.words; }),
        numeric<std::size_t>("max_factors", "longest sampled word (odd)", [](RunConfig& c) -> std::size_t& { return c.max_factors; }),
        numeric<std::uint64_t>("seed", "random seed", [](RunConfig& c) -> std::uint64_t& { return c.seed; }),
        numeric<double>("interior_spread", "interior durations lie in [T1, T1 + spread]", [](RunConfig& c) -> double& { return c.interior_spread; }),
        numeric<int>("slope_samples", "sampled slopes per word", [](RunConfig& c) -> int& { return c.slope_samples; }),
        {"policy", "cone policy: adaptive or literal",
         [](RunConfig& c, const std::string& v) { c.policy = cone_policy_from_string(v); },
         [](const RunConfig& c) { return to_string(c.policy); }},
        numeric<int>("transversality_grid", "points per side of the (r, theta) grid", [](RunConfig& c) -> int& { return c.transversality_grid; }),
        numeric<int>("helicoid_density", "samples per boundary arc", [](RunConfig& c) -> int& { return c.helicoid_density; }),
        numeric<std::size_t>("volume_samples", "sampled r values in the volume check", [](RunConfig& c) -> std::size_t& { return c.volume_samples; }),
        numeric<int>("n_max", "largest n in the combinatorics table", [](RunConfig& c) -> int& { return c.n_max; }),
        numeric<int>("m_max", "largest |m| in the combinatorics table", [](RunConfig& c) -> int& { return c.m_max; }),
        numeric<double>("trace_r", "entry height of the traced orbit", [](RunConfig& c) -> double& { return c.trace_r; }),
        numeric<int>("trace_quadrant", "quadrant of the traced orbit", [](RunConfig& c) -> int& { return c.trace_quadrant; }),
        numeric<int>("trace_samples", "samples along the traced orbit", [](RunConfig& c) -> int& { return c.trace_samples; }),
        {"mesh_out", "CSV path for the transversality mesh (empty: none)",
         [](RunConfig& c, const std::string& v) { c.mesh_out = v; },
         [](const RunConfig& c) { return c.mesh_out; }},
    };
    return table;
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool found = false;
        for (const auto& k : keys()) {
            if (key == k.name) {
                k.set(base, value);
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    validate_config(base);
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

void validate_config(const RunConfig& c) {
    const auto violations = parameter_violations(c.params);
    if (!violations.empty()) throw ConfigError("invalid model parameters: " + violations.front());
    const auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    require(c.r1_ref > 0.0 && c.r1_ref < 1.0, "r1_ref must lie in (0, 1)");
    require(c.ratio > 0.0 && c.ratio < 1.0, "ratio must lie in (0, 1)");
    require(c.budget >= 0, "budget must be non-negative");
    require(c.grid >= 3, "grid must be at least 3");
    require(c.words >= 2, "words must be at least 2");
    require(c.max_factors >= 1 && c.max_factors % 2 == 1, "max_factors must be odd and positive");
    require(c.interior_spread >= 0.0, "interior_spread must be non-negative");
    require(c.slope_samples >= 2, "slope_samples must be at least 2");
    require(c.transversality_grid >= 2, "transversality_grid must be at least 2");
    require(c.helicoid_density >= 2, "helicoid_density must be at least 2");
    require(c.volume_samples >= 1, "volume_samples must be positive");
    require(c.n_max >= 1 && c.m_max >= 1, "n_max and m_max must be at least 1");
    require(c.trace_r > 0.0, "trace_r must be positive");
    require(c.trace_quadrant >= 1 && c.trace_quadrant <= 4, "trace_quadrant must be 1..4");
    require(c.trace_samples >= 2, "trace_samples must be at least 2");
}

std::map<std::string, std::string> describe(const RunConfig& config) {
    std::map<std::string, std::string> out;
    for (const auto& k : keys()) out[k.name] = k.get(config);
    return out;
}

std::string config_help() {
    const RunConfig defaults;
    std::ostringstream os;
    os << "Config file keys (key = value, '#' comments):\n";
    for (const auto& k : keys()) {
        os << "  " << k.name << " = " << k.get(defaults) << "    # " << k.help << '\n';
    }
    return os.str();
}

}  // namespace anosov::cli
