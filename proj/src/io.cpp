#include "herding/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace herding {

namespace {

double parse_double(std::string_view key, std::string_view text)
{
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("config key '" + std::string(key) + "': expected a number, got '" +
                                    std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text)
{
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("config key '" + std::string(key) +
                                    "': expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

int parse_int(std::string_view key, std::string_view text)
{
    int v = 0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') {
        ++first;
    }
    const auto [end, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("config key '" + std::string(key) + "': expected an integer, got '" +
                                    std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw std::invalid_argument("config key '" + std::string(key) + "': expected a boolean, got '" +
                                std::string(text) + "'");
}

struct KeyEntry {
    std::function<void(SimulationConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const SimulationConfig&)> get;
};

template <typename Member>
KeyEntry real_key(Member member)
{
    return {[member](SimulationConfig& c, std::string_view k, std::string_view v) { member(c) = parse_double(k, v); },
            [member](const SimulationConfig& c) { return format_double(member(c)); }};
}

template <typename Member>
KeyEntry count_key(Member member)
{
    return {[member](SimulationConfig& c, std::string_view k, std::string_view v) {
                member(c) = static_cast<std::size_t>(parse_uint(k, v));
            },
            [member](const SimulationConfig& c) { return std::to_string(member(c)); }};
}

const std::vector<std::pair<std::string, KeyEntry>>& key_table()
{
    static const std::vector<std::pair<std::string, KeyEntry>> table = [] {
        std::vector<std::pair<std::string, KeyEntry>> t;
        t.emplace_back("n_herders", count_key([](auto& c) -> auto& { return c.n_herders; }));
        t.emplace_back("n_targets", count_key([](auto& c) -> auto& { return c.n_targets; }));
        t.emplace_back("horizon", real_key([](auto& c) -> auto& { return c.horizon; }));
        t.emplace_back("dt", real_key([](auto& c) -> auto& { return c.dt; }));
        t.emplace_back("seed",
                       KeyEntry{[](SimulationConfig& c, std::string_view k, std::string_view v) { c.seed = parse_uint(k, v); },
                                [](const SimulationConfig& c) { return std::to_string(c.seed); }});
        t.emplace_back("strategy",
                       KeyEntry{[](SimulationConfig& c, std::string_view, std::string_view v) { c.strategy = parse_strategy(v); },
                                [](const SimulationConfig& c) { return std::string(to_string(c.strategy)); }});
        t.emplace_back("sector_anchor", real_key([](auto& c) -> auto& { return c.sector_anchor; }));
        t.emplace_back("persistence",
                       KeyEntry{[](SimulationConfig& c, std::string_view, std::string_view v) {
                                    c.persistence = parse_persistence(v);
                                },
                                [](const SimulationConfig& c) { return std::string(to_string(c.persistence)); }});
        t.emplace_back("herder_frame",
                       KeyEntry{[](SimulationConfig& c, std::string_view, std::string_view v) {
                                    c.herder_frame = parse_herder_frame(v);
                                },
                                [](const SimulationConfig& c) { return std::string(to_string(c.herder_frame)); }});
        t.emplace_back("record_stride",
                       count_key([](auto& c) -> auto& { return c.record_stride; }));

        t.emplace_back("params.alpha_b", real_key([](auto& c) -> auto& { return c.params.alpha_b; }));
        t.emplace_back("params.alpha_r", real_key([](auto& c) -> auto& { return c.params.alpha_r; }));
        t.emplace_back("params.mass", real_key([](auto& c) -> auto& { return c.params.mass; }));
        t.emplace_back("params.b_r", real_key([](auto& c) -> auto& { return c.params.b_r; }));
        t.emplace_back("params.eps_r", real_key([](auto& c) -> auto& { return c.params.eps_r; }));
        t.emplace_back("params.b_theta", real_key([](auto& c) -> auto& { return c.params.b_theta; }));
        t.emplace_back("params.eps_theta",
                       real_key([](auto& c) -> auto& { return c.params.eps_theta; }));
        t.emplace_back("params.r_c", real_key([](auto& c) -> auto& { return c.params.r_c; }));
        t.emplace_back("params.collision_sign",
                       KeyEntry{[](SimulationConfig& c, std::string_view k, std::string_view v) {
                                    c.params.collision_sign = parse_int(k, v);
                                },
                                [](const SimulationConfig& c) { return std::to_string(c.params.collision_sign); }});
        t.emplace_back("params.collision_step_cap",
                       real_key([](auto& c) -> auto& { return c.params.collision_step_cap; }));

        t.emplace_back("arena.center_x", real_key([](auto& c) -> auto& { return c.arena.center.x; }));
        t.emplace_back("arena.center_y", real_key([](auto& c) -> auto& { return c.arena.center.y; }));
        t.emplace_back("arena.goal_radius",
                       real_key([](auto& c) -> auto& { return c.arena.goal_radius; }));
        t.emplace_back("arena.buffer_width",
                       real_key([](auto& c) -> auto& { return c.arena.buffer_width; }));

        t.emplace_back("metrics.spectral_signal",
                       KeyEntry{[](SimulationConfig& c, std::string_view, std::string_view v) {
                                    c.metrics.spectral_signal = parse_spectral_signal(v);
                                },
                                [](const SimulationConfig& c) {
                                    return std::string(to_string(c.metrics.spectral_signal));
                                }});
        t.emplace_back("metrics.cutoff_hz",
                       real_key([](auto& c) -> auto& { return c.metrics.cutoff_hz; }));

        t.emplace_back("robot.enabled",
                       KeyEntry{[](SimulationConfig& c, std::string_view k, std::string_view v) {
                                    c.robot.enabled = parse_bool(k, v);
                                },
                                [](const SimulationConfig& c) { return std::string(c.robot.enabled ? "true" : "false"); }});
        t.emplace_back("robot.k1", real_key([](auto& c) -> auto& { return c.robot.k1; }));
        t.emplace_back("robot.k2", real_key([](auto& c) -> auto& { return c.robot.k2; }));
        t.emplace_back("robot.time_scale", real_key([](auto& c) -> auto& { return c.robot.time_scale; }));
        t.emplace_back("robot.horizon", real_key([](auto& c) -> auto& { return c.robot.horizon; }));
        t.emplace_back("robot.heading_reference",
                       KeyEntry{[](SimulationConfig& c, std::string_view, std::string_view v) {
                                    c.robot.heading_reference = parse_heading_reference(v);
                                },
                                [](const SimulationConfig& c) {
                                    return std::string(to_string(c.robot.heading_reference));
                                }});
        return t;
    }();
    return table;
}

const KeyEntry* find_key(std::string_view key)
{
    for (const auto& [name, entry] : key_table()) {
        if (name == key) {
            return &entry;
        }
    }
    return nullptr;
}

void apply_yaml(SimulationConfig& config, const YAML::Node& node, const std::string& prefix)
{
    for (const auto& kv : node) {
        const std::string name = prefix + kv.first.as<std::string>();
        const YAML::Node& value = kv.second;
        if (value.IsMap()) {
            apply_yaml(config, value, name + ".");
        } else if (value.IsScalar()) {
            set_config_value(config, name, value.Scalar());
        } else if (!value.IsNull()) {
            throw std::invalid_argument("config key '" + name + "' must be a scalar or a mapping");
        }
    }
}

}  // namespace

std::string format_double(double v)
{
    if (v == 0.0) {
        v = 0.0;  // drops the sign of -0
    }
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double failed");
    }
    return std::string(buf, end);
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, entry] : key_table()) {
            k.push_back(name);
        }
        return k;
    }();
    return keys;
}

bool is_config_key(std::string_view key)
{
    return find_key(key) != nullptr;
}

void set_config_value(SimulationConfig& config, std::string_view key, std::string_view value)
{
    const KeyEntry* entry = find_key(key);
    if (entry == nullptr) {
        throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
    }
    entry->set(config, key, value);
}

std::string get_config_value(const SimulationConfig& config, std::string_view key)
{
    const KeyEntry* entry = find_key(key);
    if (entry == nullptr) {
        throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
    }
    return entry->get(config);
}

ConfigFile parse_config_yaml(const std::string& text)
{
    ConfigFile out;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    if (root.IsNull()) {
        return out;
    }
    if (!root.IsMap()) {
        throw std::invalid_argument("config root must be a mapping");
    }
    for (const auto& kv : root) {
        const std::string name = kv.first.as<std::string>();
        const YAML::Node& value = kv.second;
        if (name == "sweep") {
            if (!value.IsMap()) {
                throw std::invalid_argument("'sweep' must map config keys to value lists");
            }
            for (const auto& axis : value) {
                SweepAxis a;
                a.key = axis.first.as<std::string>();
                if (!is_config_key(a.key)) {
                    throw std::invalid_argument("sweep axis '" + a.key + "' is not a config key");
                }
                if (!axis.second.IsSequence() || axis.second.size() == 0) {
                    throw std::invalid_argument("sweep axis '" + a.key + "' needs a non-empty list");
                }
                for (const auto& v : axis.second) {
                    a.values.push_back(v.Scalar());
                }
                out.sweep.push_back(std::move(a));
            }
        } else if (name == "trials") {
            out.trials = static_cast<std::size_t>(parse_uint("trials", value.Scalar()));
        } else {
            YAML::Node single;
            single[name] = value;
            apply_yaml(out.config, single, "");
        }
    }
    // values are checked while parsing the sweep axes too
    for (const auto& axis : out.sweep) {
        SimulationConfig probe = out.config;
        for (const auto& v : axis.values) {
            set_config_value(probe, axis.key, v);
        }
    }
    out.config.validate();
    return out;
}

ConfigFile load_config_file(const std::filesystem::path& path)
{
    return parse_config_yaml(read_text_file(path));
}

std::string config_to_yaml(const SimulationConfig& config)
{
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
    std::vector<std::pair<std::string, std::string>> top;
    for (const auto& key : config_keys()) {
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            top.emplace_back(key, get_config_value(config, key));
        } else {
            sections[key.substr(0, dot)].emplace_back(key.substr(dot + 1), get_config_value(config, key));
        }
    }
    YAML::Emitter out;
    out << YAML::BeginMap;
    for (const auto& [k, v] : top) {
        out << YAML::Key << k << YAML::Value << v;
    }
    for (const auto& [section, entries] : sections) {
        out << YAML::Key << section << YAML::Value << YAML::BeginMap;
        for (const auto& [k, v] : entries) {
            out << YAML::Key << k << YAML::Value << v;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

nlohmann::ordered_json config_to_json(const SimulationConfig& config)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& key : config_keys()) {
        const std::string text = get_config_value(config, key);
        nlohmann::ordered_json value;
        double d = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
        if (ec == std::errc() && end == text.data() + text.size()) {
            value = d;
        } else if (text == "true" || text == "false") {
            value = text == "true";
        } else {
            value = text;
        }
        nlohmann::ordered_json* slot = &j;
        std::string_view rest = key;
        for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
            slot = &(*slot)[std::string(rest.substr(0, dot))];
            rest.remove_prefix(dot + 1);
        }
        (*slot)[std::string(rest)] = value;
    }
    // integer-valued keys keep integer JSON types
    j["n_herders"] = config.n_herders;
    j["n_targets"] = config.n_targets;
    j["seed"] = config.seed;
    j["record_stride"] = config.record_stride;
    j["params"]["collision_sign"] = config.params.collision_sign;
    return j;
}

nlohmann::ordered_json report_to_json(const MetricsReport& report)
{
    auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json j;
    j["gathering_time"] = opt(report.gathering_time);
    j["d_g"] = opt(report.d_g);
    j["d_tot"] = report.d_tot;
    j["herd_distance"] = report.herd_distance;
    j["spread"] = report.spread;
    j["spread_pct"] = report.spread_pct;
    nlohmann::ordered_json behaviour = nlohmann::ordered_json::array();
    for (const auto& b : report.behaviour) {
        nlohmann::ordered_json e;
        e["index"] = b.index;
        e["dominant_hz"] = b.dominant_hz;
        e["dominant_power"] = b.dominant_power;
        e["degenerate"] = b.degenerate;
        behaviour.push_back(e);
    }
    j["behavioral_index"] = behaviour;
    j["pair_label"] = std::string(to_string(report.pair_label));
    return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    os << text;
    if (!os) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

namespace {

void write_row(std::ostream& os,
               double t,
               std::string_view kind,
               std::size_t id,
               const Point2& p,
               const Point2& v,
               long chased)
{
    os << format_double(t) << ',' << kind << ',' << id << ',' << format_double(p.x) << ',' << format_double(p.y)
       << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << chased;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t,agent_kind,agent_id,x,y,vx,vy,chased_id\n";
    for (std::size_t s = 0; s < traj.samples.size(); ++s) {
        const WorldState& w = traj.samples[s];
        for (std::size_t j = 0; j < w.herders.size(); ++j) {
            const auto& c = j < w.assignment.chased.size() ? w.assignment.chased[j] : std::nullopt;
            write_row(os, w.time, "herder", j, w.herders[j].position, w.herders[j].velocity,
                      c ? static_cast<long>(*c) : -1L);
            os << '\n';
        }
        for (std::size_t i = 0; i < w.targets.size(); ++i) {
            Point2 v{};
            if (s > 0) {
                const WorldState& prev = traj.samples[s - 1];
                v = (w.targets[i].position - prev.targets[i].position) / (w.time - prev.time);
            }
            write_row(os, w.time, "target", i, w.targets[i].position, v, -1L);
            os << '\n';
        }
    }
}

void write_robot_csv(std::ostream& os, const RobotTrial& trial)
{
    os << "t,agent_kind,agent_id,x,y,vx,vy,chased_id,heading,v_cmd,omega_cmd\n";
    for (std::size_t s = 0; s < trial.frames.size(); ++s) {
        const RobotFrame& f = trial.frames[s];
        const WorldState& w = trial.realized.samples[s];
        const std::size_t nh = w.herders.size();
        for (std::size_t k = 0; k < f.robots.size(); ++k) {
            const bool herder = k < nh;
            const std::size_t id = herder ? k : k - nh;
            long chased = -1;
            if (herder && id < w.assignment.chased.size() && w.assignment.chased[id]) {
                chased = static_cast<long>(*w.assignment.chased[id]);
            }
            const Point2 v = f.commands[k].v * unit_vector(f.robots[k].heading);
            write_row(os, f.time, herder ? "herder" : "target", id, f.robots[k].position, v, chased);
            os << ',' << format_double(f.robots[k].wrapped_heading()) << ',' << format_double(f.commands[k].v) << ','
               << format_double(f.commands[k].omega) << '\n';
        }
    }
}

nlohmann::ordered_json trajectory_metadata(const SimulationConfig& config, std::string_view kind)
{
    nlohmann::ordered_json j;
    j["kind"] = std::string(kind);
    j["seed"] = config.seed;
    j["config"] = config_to_json(config);
    return j;
}

SimulationConfig config_from_json(const nlohmann::ordered_json& j)
{
    SimulationConfig config;
    std::function<void(const nlohmann::ordered_json&, const std::string&)> walk =
        [&](const nlohmann::ordered_json& node, const std::string& prefix) {
            for (const auto& [k, v] : node.items()) {
                const std::string name = prefix + k;
                if (v.is_object()) {
                    walk(v, name + ".");
                } else if (v.is_string()) {
                    set_config_value(config, name, v.get<std::string>());
                } else if (v.is_number_float()) {
                    set_config_value(config, name, format_double(v.get<double>()));
                } else if (!v.is_null()) {
                    set_config_value(config, name, v.dump());
                }
            }
        };
    walk(j, "");
    config.validate();
    return config;
}

Trajectory read_trajectory_csv(std::istream& is, const SimulationConfig& config)
{
    const double dt = config.dt;
    std::string line;
    if (!std::getline(is, line)) {
        throw std::invalid_argument("empty trajectory CSV");
    }
    const auto header = split_csv(line);
    if (header.size() < 8 || header[0] != "t" || header[1] != "agent_kind" || header[7] != "chased_id") {
        throw std::invalid_argument("unexpected trajectory CSV header");
    }
    Trajectory traj;
    traj.dt = dt;
    traj.record_stride = config.record_stride;
    std::optional<double> current_t;
    WorldState w;
    auto flush = [&] {
        if (current_t) {
            traj.n_herders = w.herders.size();
            traj.samples.push_back(w);
        }
        w = WorldState{};
    };
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() < 8) {
            throw std::invalid_argument("short trajectory CSV row: " + line);
        }
        const double t = parse_double("t", f[0]);
        if (!current_t || t != *current_t) {
            flush();
            current_t = t;
            w.time = t;
            w.step = static_cast<std::uint64_t>(std::llround(t / dt));
        }
        const std::size_t id = static_cast<std::size_t>(parse_uint("agent_id", f[2]));
        const Point2 p{parse_double("x", f[3]), parse_double("y", f[4])};
        const Point2 v{parse_double("vx", f[5]), parse_double("vy", f[6])};
        if (f[1] == "herder") {
            if (id != w.herders.size()) {
                throw std::invalid_argument("herder rows out of order in trajectory CSV");
            }
            HerderState h;
            h.position = p;
            h.velocity = v;
            w.herders.push_back(h);
            const int chased = parse_int("chased_id", f[7]);
            w.assignment.chased.push_back(chased < 0 ? std::nullopt
                                                     : std::optional<std::size_t>(static_cast<std::size_t>(chased)));
        } else if (f[1] == "target") {
            if (id != w.targets.size()) {
                throw std::invalid_argument("target rows out of order in trajectory CSV");
            }
            w.targets.push_back({p});
        } else {
            throw std::invalid_argument("unknown agent_kind '" + f[1] + "'");
        }
    }
    flush();

    // unwrapped angles and per-step speeds
    for (std::size_t s = 0; s < traj.samples.size(); ++s) {
        for (std::size_t j = 0; j < traj.samples[s].herders.size(); ++j) {
            HerderState& h = traj.samples[s].herders[j];
            const double theta = to_polar(h.position, config.arena.center).value.angle;
            if (s == 0) {
                h.unwrapped_angle = theta;
            } else {
                const double prev = traj.samples[s - 1].herders[j].unwrapped_angle;
                h.unwrapped_angle = prev + wrap_angle(theta - wrap_angle(prev));
            }
        }
    }
    for (std::size_t s = 1; s < traj.samples.size(); ++s) {
        const auto gap = traj.samples[s].step - traj.samples[s - 1].step;
        for (std::uint64_t k = 0; k < gap; ++k) {
            for (const auto& h : traj.samples[s].herders) {
                traj.herder_speeds.push_back(h.velocity.norm());
            }
        }
    }
    return traj;
}

}  // namespace herding
