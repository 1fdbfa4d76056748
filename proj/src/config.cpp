#include "pbfv/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace pbfv {

ConfigError::ConfigError(std::size_t line, const std::string& msg)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    std::size_t line;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double number(const std::string& key) const {
        const Entry& e = entries_.at(key);
        return parse_number(e.value, key, e.line);
    }

    std::optional<double> number_opt(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    std::vector<double> list(const std::string& key) const {
        const Entry& e = entries_.at(key);
        std::vector<double> out;
        std::string_view rest = e.value;
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            if (item.empty()) throw ConfigError(e.line, key + ": empty list item");
            out.push_back(parse_number(item, key, e.line));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return out;
    }

    const std::string& word(const std::string& key) const { return entries_.at(key).value; }
    std::size_t line(const std::string& key) const { return entries_.at(key).line; }

private:
    static double parse_number(std::string_view s, const std::string& key, std::size_t line) {
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
            throw ConfigError(line, key + ": expected a finite number, got '" + std::string(s) + "'");
        return x;
    }

    std::map<std::string, Entry> entries_;
};

const std::vector<std::string> kKnownKeys{
    "lambda", "mass", "mu", "dx", "dt", "T", "flux", "iface", "velocity_update", "domain",
    "half_width", "u_minus", "u_plus", "breakpoints", "values", "h0", "v0", "snapshots", "seed",
    "levels", "reference_dx", "probe_grid", "probe_speeds", "probe_half_box", "probe_candidates",
    "probe_h_samples"};

template <class Enum>
Enum pick(const Reader& r, const std::string& key, std::initializer_list<std::pair<const char*, Enum>> opts) {
    const std::string& w = r.word(key);
    std::string names;
    for (const auto& [name, val] : opts) {
        if (w == name) return val;
        names += names.empty() ? name : std::string("|") + name;
    }
    throw ConfigError(r.line(key), key + ": expected one of " + names + ", got '" + w + "'");
}

void require_positive(const Reader& r, const std::string& key, double x) {
    if (!(x > 0.0)) throw ConfigError(r.line(key), key + ": must be > 0");
}

int positive_int(const Reader& r, const std::string& key) {
    const double x = r.number(key);
    if (!(x >= 1.0) || x != std::floor(x) || x > 1e9)
        throw ConfigError(r.line(key), key + ": expected a positive integer");
    return static_cast<int>(x);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(lineno, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(lineno, "missing key");
        if (value.empty()) throw ConfigError(lineno, key + ": missing value");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError(lineno, "unknown key '" + key + "'");
        if (entries.count(key)) throw ConfigError(lineno, "duplicate key '" + key + "'");
        entries.emplace(key, Entry{value, lineno});
    }

    const Reader r(std::move(entries));
    for (const char* key : {"lambda", "mass", "mu", "dx", "T"})
        if (!r.has(key)) throw ConfigError(0, std::string("missing required key '") + key + "'");

    ExperimentConfig c;
    SchemeConfig& s = c.scheme;
    const double lam = r.number("lambda");
    require_positive(r, "lambda", lam);
    s.germ = GermParams(lam);
    s.m_p = r.number("mass");
    require_positive(r, "mass", s.m_p);
    s.mu = r.number("mu");
    require_positive(r, "mu", s.mu);
    c.dx = r.number("dx");
    require_positive(r, "dx", c.dx);
    s.T = r.number("T");
    if (s.T < 0.0) throw ConfigError(r.line("T"), "T: must be >= 0");
    if (r.has("dt")) {
        s.dt_override = r.number("dt");
        require_positive(r, "dt", *s.dt_override);
    }
    if (r.has("half_width")) {
        s.half_width = r.number("half_width");
        require_positive(r, "half_width", *s.half_width);
    }
    if (r.has("flux"))
        s.bulk = pick<BulkFluxKind>(r, "flux", {{"godunov", BulkFluxKind::Godunov},
                                                {"rusanov", BulkFluxKind::Rusanov},
                                                {"eo", BulkFluxKind::EngquistOsher}});
    if (r.has("iface"))
        s.iface = pick<InterfaceFluxKind>(r, "iface", {{"max-germ", InterfaceFluxKind::MaxGerm},
                                                       {"g1-only", InterfaceFluxKind::G1Only}});
    if (r.has("velocity_update"))
        s.velocity_update = pick<VelocityUpdate>(r, "velocity_update",
                                                 {{"explicit", VelocityUpdate::Explicit},
                                                  {"implicit", VelocityUpdate::Implicit}});
    if (r.has("domain"))
        s.domain = pick<DomainKind>(r, "domain", {{"padded", DomainKind::Padded},
                                                  {"periodic", DomainKind::Periodic}});
    if (s.domain == DomainKind::Periodic && !s.half_width)
        throw ConfigError(r.line("domain"), "domain: periodic requires half_width");

    c.h0 = r.number_opt("h0").value_or(0.0);
    c.v0 = r.number_opt("v0").value_or(0.0);

    const bool riemann = r.has("u_minus") || r.has("u_plus");
    const bool piecewise = r.has("breakpoints") || r.has("values");
    if (riemann && piecewise)
        throw ConfigError(r.line(r.has("values") ? "values" : "breakpoints"),
                          "give either u_minus/u_plus or breakpoints/values, not both");
    if (riemann) {
        if (!r.has("u_minus") || !r.has("u_plus"))
            throw ConfigError(r.line(r.has("u_minus") ? "u_minus" : "u_plus"),
                              "Riemann datum needs both u_minus and u_plus");
        c.datum = PiecewiseConstant::riemann(r.number("u_minus"), r.number("u_plus"), c.h0);
        c.riemann = true;
    } else if (piecewise) {
        if (!r.has("values")) throw ConfigError(r.line("breakpoints"), "breakpoints: missing values");
        PiecewiseConstant pc;
        pc.values = r.list("values");
        if (r.has("breakpoints")) pc.breakpoints = r.list("breakpoints");
        try {
            pc.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(r.line("values"), std::string("values: ") + e.what());
        }
        c.datum = std::move(pc);
    }

    if (r.has("snapshots")) {
        c.snapshots = r.list("snapshots");
        for (double t : c.snapshots)
            if (t < 0.0 || t > s.T)
                throw ConfigError(r.line("snapshots"), "snapshots: times must lie in [0, T]");
    }
    if (r.has("seed")) {
        const double x = r.number("seed");
        if (x < 0.0 || x != std::floor(x) || x > 9007199254740992.0)
            throw ConfigError(r.line("seed"), "seed: expected a non-negative integer");
        c.seed = static_cast<std::uint64_t>(x);
    }
    if (r.has("levels")) {
        c.levels = r.list("levels");
        if (c.levels.size() < 3) throw ConfigError(r.line("levels"), "levels: need at least 3 entries");
        for (std::size_t i = 0; i < c.levels.size(); ++i)
            if (!(c.levels[i] > 0.0) || (i > 0 && !(c.levels[i] < c.levels[i - 1])))
                throw ConfigError(r.line("levels"), "levels: must be positive and strictly decreasing");
    }
    if (r.has("reference_dx")) {
        c.reference_dx = r.number("reference_dx");
        require_positive(r, "reference_dx", *c.reference_dx);
    }
    if (r.has("probe_grid")) {
        c.probe_grid = positive_int(r, "probe_grid");
        if (c.probe_grid < 2) throw ConfigError(r.line("probe_grid"), "probe_grid: must be >= 2");
    }
    if (r.has("probe_speeds")) c.probe_speeds = r.list("probe_speeds");
    if (r.has("probe_half_box")) {
        c.probe_half_box = r.number("probe_half_box");
        require_positive(r, "probe_half_box", c.probe_half_box);
    }
    if (r.has("probe_candidates")) c.probe_candidates = positive_int(r, "probe_candidates");
    if (r.has("probe_h_samples")) {
        c.probe_h_samples = positive_int(r, "probe_h_samples");
        if (c.probe_h_samples < 100)
            throw ConfigError(r.line("probe_h_samples"), "probe_h_samples: must be >= 100");
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace pbfv
