#include "fracns/config.hpp"

#include "fracns/energy.hpp"
#include "fracns/errors.hpp"
#include "fracns/observables.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

namespace fracns {

using nlohmann::json;

namespace {

std::string str(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

// Recursively copies `user` onto `base`, rejecting keys the defaults lack.
void merge(json& base, const json& user, const std::string& path)
{
    if (!user.is_object())
        throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key()))
            throw ConfigError(key, "unknown key");
        json& slot = base[it.key()];
        if (slot.is_object() && it.value().is_object())
            merge(slot, it.value(), key);
        else
            slot = it.value();
    }
}

void apply_override(json& root, const std::string& item)
{
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError(item, "override must have the form key=value");
    const std::string path = item.substr(0, eq), text = item.substr(eq + 1);
    json* node = &root;
    std::istringstream parts(path);
    std::string part, walked;
    while (std::getline(parts, part, '.')) {
        walked += walked.empty() ? part : "." + part;
        if (!node->is_object() || !node->contains(part))
            throw ConfigError(walked, "unknown key");
        node = &(*node)[part];
    }
    json value = json::parse(text, nullptr, false);
    *node = value.is_discarded() ? json(text) : value;
}

class Reader {
public:
    explicit Reader(const json& root) : root_(root) {}

    const json& at(const std::string& path) const
    {
        const json* node = &root_;
        std::istringstream parts(path);
        std::string part;
        while (std::getline(parts, part, '.'))
            node = &node->at(part);
        return *node;
    }
    double number(const std::string& path) const
    {
        const json& v = at(path);
        if (!v.is_number())
            throw ConfigError(path, "expected a number");
        return v.get<double>();
    }
    std::optional<double> maybe_number(const std::string& path) const
    {
        return at(path).is_null() ? std::nullopt : std::optional<double>(number(path));
    }
    long long integer(const std::string& path) const
    {
        const json& v = at(path);
        if (!v.is_number_integer())
            throw ConfigError(path, "expected an integer");
        return v.get<long long>();
    }
    std::string string(const std::string& path) const
    {
        const json& v = at(path);
        if (!v.is_string())
            throw ConfigError(path, "expected a string");
        return v.get<std::string>();
    }
    std::vector<double> numbers(const std::string& path) const
    {
        const json& v = at(path);
        if (!v.is_array())
            throw ConfigError(path, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError(path, "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

private:
    const json& root_;
};

void require(bool ok, const std::string& field, const std::string& constraint)
{
    if (!ok)
        throw ConfigError(field, constraint);
}

void validate(const RunConfig& c)
{
    try {
        c.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
    FluidParams p;
    try {
        p = c.params();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("params", e.what());
    }

    const auto& id = c.initial;
    require(id.family == "gaussian-bumps" || id.family == "random-spectral" || id.family == "zero",
            "initial_data.family", "must be gaussian-bumps, random-spectral or zero");
    require(id.amplitude >= 0.0, "initial_data.amplitude", "must be >= 0");
    require(!id.target_E0 || *id.target_E0 > 0.0, "initial_data.target_E0", "must be > 0");
    require(id.width > 0.0, "initial_data.width", "must be > 0");
    require(id.bumps >= 1, "initial_data.bumps", "must be >= 1");

    const auto& t = c.time;
    require(t.t_end >= 0.0, "time.t_end", "must be >= 0");
    require(t.output_interval > 0.0, "time.output_interval", "must be > 0");
    require(!t.dt || *t.dt > 0.0, "time.dt", "must be > 0");
    require(t.cfl > 0.0, "time.cfl", "must be > 0");
    require(!t.eps || *t.eps > 0.0, "time.eps", "must be > 0");
    require(t.blowup_factor > 1.0, "time.blowup_factor", "must be > 1");
    require(t.checkpoint_every >= 0, "time.checkpoint_every", "must be >= 0");
    const double steps = t.t_end / t.output_interval;
    require(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps), "time.output_interval",
            "must divide time.t_end");

    const auto& o = c.observables;
    require(o.s > 1.5, "observables.s", "must be > 3/2");
    require(!o.sigma_grid.empty(), "observables.sigma_grid", "must not be empty");
    for (double s : o.sigma_grid)
        require(s >= 0.0, "observables.sigma_grid", "entries must be >= 0");
    const double hi = (3.0 + 4.0 * c.alpha) / 2.0;
    const double s0 = c.sigma0();
    require(s0 > 2.5 && s0 < hi, "observables.sigma0",
            "= " + str(s0) + " lies outside the admissible interval (2.5, " + str(hi) + ") for alpha = " +
                str(c.alpha));
    require(c.beta3() >= 0.0 && c.beta3() < 1.0, "observables.beta3", "must lie in [0, 1)");
    require(o.r0 > 0.0, "observables.r0", "must be > 0");
    require(o.R0 > o.r0, "observables.R0", "must be > observables.r0");
    if (o.fit_window)
        require(o.fit_window->first > 0.0 && o.fit_window->second > o.fit_window->first,
                "observables.fit_window", "needs 0 < t1 < t2");
    require(o.tolerance >= 0.0, "observables.tolerance", "must be >= 0");
    require(o.bootstrap_factor > 1.0, "observables.bootstrap_factor", "must be > 1");
    require(o.eta > 0.0, "observables.eta", "must be > 0");
    require(o.dissipation_change > 0.0, "observables.dissipation_change", "must be > 0");
    for (double v : o.c_grid)
        require(v > 0.0, "observables.c_grid", "entries must be > 0");
    require(o.C_max > 0.0, "observables.C_max", "must be > 0");
    require(o.plateau_max >= 1.0, "observables.plateau_max", "must be >= 1");

    const auto& l = c.linear_decay;
    require(l.t1 > 0.0 && l.t2 > l.t1, "linear_decay.t2", "needs 0 < t1 < t2");
    require(l.samples >= 10, "linear_decay.samples", "must be >= 10");
    require(l.dim == 2 || l.dim == 3, "linear_decay.dim", "must be 2 or 3");
    require(l.profile == "bump" || l.profile == "ball", "linear_decay.profile", "must be bump or ball");
    require(l.radius > 0.0, "linear_decay.radius", "must be > 0");
    require(l.weights.size() == 3, "linear_decay.weights", "needs three entries");

    require(c.duhamel.tolerance > 0.0, "duhamel.tolerance", "must be > 0");
    require(c.duhamel.min_ratio > 0.0, "duhamel.min_ratio", "must be > 0");

    const auto& pt = c.proptest;
    require(pt.trials >= 1, "proptest.trials", "must be >= 1");
    require(pt.max_mode >= 1, "proptest.max_mode", "must be >= 1");
    require(pt.cj_trials >= 1, "proptest.cj_trials", "must be >= 1");
    require(pt.cj_sigma > 0.5 * c.grid.dim - 1.0, "proptest.cj_sigma", "must be > dim/2 - 1");
    require(pt.cj_max_deviation >= 1.0, "proptest.cj_max_deviation", "must be >= 1");

    // smallness of the initial data
    if (id.family != "zero") {
        const double e0 = id.target_E0 ? *id.target_E0
                                       : energy_E0(make_initial_state(Grid::make(c.grid), id, o.s), o.s);
        require(e0 <= o.eta, "initial_data.amplitude",
                "E(0) = " + str(e0) + " exceeds the smallness threshold observables.eta = " + str(o.eta));
    }
}

json optional(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

double RunConfig::sigma0() const
{
    return observables.sigma0 ? *observables.sigma0 : default_sigma0(alpha);
}

double RunConfig::beta3() const
{
    return observables.beta3 ? *observables.beta3 : 0.05 * std::min(std::sqrt(A * gamma), mu);
}

double parse_length(const json& v)
{
    if (v.is_number())
        return v.get<double>();
    if (!v.is_string())
        throw ConfigError("grid.box_length", "expected a number or a string such as \"2pi*8\"");
    static const std::regex re(R"(\s*([0-9]*\.?[0-9]*)\s*pi\s*(?:\*\s*([0-9]*\.?[0-9]+))?\s*)");
    std::smatch m;
    const std::string s = v.get<std::string>();
    if (!std::regex_match(s, m, re))
        throw ConfigError("grid.box_length", "cannot read '" + s + "' as a length");
    const double a = m[1].length() ? std::stod(m[1].str()) : 1.0;
    const double b = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return a * std::numbers::pi * b;
}

json default_config_json()
{
    const RunConfig c;
    json j = to_json(c);
    j["observables"]["sigma0"] = nullptr;
    j["observables"]["beta3"] = nullptr;
    return j;
}

json to_json(const RunConfig& c)
{
    const auto& t = c.time;
    const auto& o = c.observables;
    const auto& l = c.linear_decay;
    json fit = o.fit_window ? json::array({o.fit_window->first, o.fit_window->second}) : json(nullptr);
    return json{
        {"seed", c.seed},
        {"grid",
         {{"dim", c.grid.dim},
          {"n", c.grid.n},
          {"box_length", c.grid.box_length},
          {"dealias_fraction", c.grid.dealias_fraction}}},
        {"params", {{"A", c.A}, {"gamma", c.gamma}, {"mu", c.mu}, {"alpha", c.alpha}}},
        {"initial_data",
         {{"family", c.initial.family},
          {"amplitude", c.initial.amplitude},
          {"target_E0", optional(c.initial.target_E0)},
          {"width", c.initial.width},
          {"bumps", c.initial.bumps}}},
        {"time",
         {{"scheme", scheme_name(t.scheme)},
          {"dt", optional(t.dt)},
          {"t_end", t.t_end},
          {"output_interval", t.output_interval},
          {"cfl", t.cfl},
          {"eps", optional(t.eps)},
          {"blowup_factor", t.blowup_factor},
          {"checkpoint_every", t.checkpoint_every}}},
        {"observables",
         {{"s", o.s},
          {"sigma_grid", o.sigma_grid},
          {"sigma0", c.sigma0()},
          {"beta3", c.beta3()},
          {"r0", o.r0},
          {"R0", o.R0},
          {"fit_window", fit},
          {"tolerance", o.tolerance},
          {"bootstrap_factor", o.bootstrap_factor},
          {"eta", o.eta},
          {"dissipation_change", o.dissipation_change},
          {"c_grid", o.c_grid},
          {"C_max", o.C_max},
          {"plateau_max", o.plateau_max}}},
        {"linear_decay",
         {{"t1", l.t1},
          {"t2", l.t2},
          {"samples", l.samples},
          {"dim", l.dim},
          {"profile", l.profile},
          {"radius", l.radius},
          {"weights", l.weights}}},
        {"duhamel", {{"tolerance", c.duhamel.tolerance}, {"min_ratio", c.duhamel.min_ratio}}},
        {"proptest",
         {{"trials", c.proptest.trials},
          {"max_mode", c.proptest.max_mode},
          {"cj_trials", c.proptest.cj_trials},
          {"cj_sigma", c.proptest.cj_sigma},
          {"cj_max_deviation", c.proptest.cj_max_deviation}}},
        {"output", {{"dir", c.out_dir}}},
    };
}

RunConfig resolve_config(const json& user, const std::vector<std::string>& overrides)
{
    json root = default_config_json();
    merge(root, user, "");
    for (const auto& o : overrides)
        apply_override(root, o);

    const Reader r(root);
    RunConfig c;
    const json& seed = r.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
        throw ConfigError("seed", "expected a nonnegative integer");
    c.seed = seed.get<std::uint64_t>();

    c.grid.dim = static_cast<int>(r.integer("grid.dim"));
    c.grid.n = static_cast<int>(r.integer("grid.n"));
    c.grid.box_length = parse_length(r.at("grid.box_length"));
    c.grid.dealias_fraction = r.number("grid.dealias_fraction");

    c.A = r.number("params.A");
    c.gamma = r.number("params.gamma");
    c.mu = r.number("params.mu");
    c.alpha = r.number("params.alpha");

    c.initial.family = r.string("initial_data.family");
    c.initial.amplitude = r.number("initial_data.amplitude");
    c.initial.target_E0 = r.maybe_number("initial_data.target_E0");
    c.initial.width = r.number("initial_data.width");
    c.initial.bumps = static_cast<int>(r.integer("initial_data.bumps"));
    c.initial.seed = c.seed;

    try {
        c.time.scheme = parse_scheme(r.string("time.scheme"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("time.scheme", e.what());
    }
    c.time.dt = r.maybe_number("time.dt");
    c.time.t_end = r.number("time.t_end");
    c.time.output_interval = r.number("time.output_interval");
    c.time.cfl = r.number("time.cfl");
    c.time.eps = r.maybe_number("time.eps");
    c.time.blowup_factor = r.number("time.blowup_factor");
    c.time.checkpoint_every = static_cast<int>(r.integer("time.checkpoint_every"));

    auto& o = c.observables;
    o.s = r.number("observables.s");
    c.time.energy_s = o.s;
    o.sigma_grid = r.numbers("observables.sigma_grid");
    o.sigma0 = r.maybe_number("observables.sigma0");
    o.beta3 = r.maybe_number("observables.beta3");
    o.r0 = r.number("observables.r0");
    o.R0 = r.number("observables.R0");
    if (!r.at("observables.fit_window").is_null()) {
        const auto w = r.numbers("observables.fit_window");
        if (w.size() != 2)
            throw ConfigError("observables.fit_window", "expected [t1, t2] or null");
        o.fit_window = std::pair{w[0], w[1]};
    }
    o.tolerance = r.number("observables.tolerance");
    o.bootstrap_factor = r.number("observables.bootstrap_factor");
    o.eta = r.number("observables.eta");
    o.dissipation_change = r.number("observables.dissipation_change");
    o.c_grid = r.numbers("observables.c_grid");
    o.C_max = r.number("observables.C_max");
    o.plateau_max = r.number("observables.plateau_max");

    auto& l = c.linear_decay;
    l.t1 = r.number("linear_decay.t1");
    l.t2 = r.number("linear_decay.t2");
    l.samples = static_cast<int>(r.integer("linear_decay.samples"));
    l.dim = static_cast<int>(r.integer("linear_decay.dim"));
    l.profile = r.string("linear_decay.profile");
    l.radius = r.number("linear_decay.radius");
    l.weights = r.numbers("linear_decay.weights");

    c.duhamel.tolerance = r.number("duhamel.tolerance");
    c.duhamel.min_ratio = r.number("duhamel.min_ratio");

    c.proptest.trials = static_cast<int>(r.integer("proptest.trials"));
    c.proptest.max_mode = static_cast<int>(r.integer("proptest.max_mode"));
    c.proptest.cj_trials = static_cast<int>(r.integer("proptest.cj_trials"));
    c.proptest.cj_sigma = r.number("proptest.cj_sigma");
    c.proptest.cj_max_deviation = r.number("proptest.cj_max_deviation");

    c.out_dir = r.string("output.dir");

    validate(c);
    return c;
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config", "cannot open '" + path + "'");
    json user;
    try {
        user = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("malformed JSON in '") + path + "': " + e.what());
    }
    return resolve_config(user, overrides);
}

} // namespace fracns
