#include "meshplan/config.hpp"

#include "meshplan/csv.hpp"
#include "meshplan/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace meshplan {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no,
                       const std::string& what)
{
    throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

double number_or_fail(const std::string& value, const std::filesystem::path& path,
                      std::size_t line_no, const std::string& key)
{
    auto parsed = csv::parse_number(value);
    if (!parsed) fail(path, line_no, "non-numeric value for " + key + ": \"" + value + "\"");
    return *parsed;
}

int int_or_fail(const std::string& value, const std::filesystem::path& path, std::size_t line_no,
                const std::string& key)
{
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(path, line_no, "non-integer value for " + key + ": \"" + value + "\"");
    return out;
}

std::uint64_t uint_or_fail(const std::string& value, const std::filesystem::path& path,
                           std::size_t line_no, const std::string& key)
{
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(path, line_no, "non-integer value for " + key + ": \"" + value + "\"");
    return out;
}

bool bool_or_fail(const std::string& value, const std::filesystem::path& path,
                  std::size_t line_no, const std::string& key)
{
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(path, line_no, "expected true/false for " + key + ": \"" + value + "\"");
}

}  // namespace

AssignMode parse_assign_mode(const std::string& text)
{
    if (text == "exact") return AssignMode::exact;
    if (text == "greedy") return AssignMode::greedy;
    throw ConfigError("assign_mode must be \"exact\" or \"greedy\", got \"" + text + "\"");
}

PlanConfig parse_plan_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());

    PlanConfig cfg;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view text = trim(line);
        if (text.empty() || text.front() == '#' || text.front() == ';') continue;

        if (text.front() == '[') {
            if (text.back() != ']') fail(path, line_no, "unterminated section header");
            section = std::string(trim(text.substr(1, text.size() - 2)));
            if (section != "paths" && section != "budget" && section != "kernel" &&
                section != "cluster")
                fail(path, line_no, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = text.find('=');
        if (eq == std::string_view::npos) fail(path, line_no, "expected key = value");
        const std::string key(trim(text.substr(0, eq)));
        const std::string value(trim(text.substr(eq + 1)));
        if (key.empty()) fail(path, line_no, "empty key");

        if (section == "paths") {
            if (key == "roster") cfg.roster_path = value;
            else if (key == "pathloss") cfg.pathloss_path = value;
            else if (key == "outdir") cfg.output_dir = value;
            else fail(path, line_no, "unknown key \"" + key + "\" in [paths]");
        } else if (section == "budget") {
            if (key == "tx_power_dbm") cfg.budget.tx_power_dbm = number_or_fail(value, path, line_no, key);
            else if (key == "tx_gain_dbi") cfg.budget.tx_gain_dbi = number_or_fail(value, path, line_no, key);
            else if (key == "rx_gain_dbi") cfg.budget.rx_gain_dbi = number_or_fail(value, path, line_no, key);
            else if (key == "system_losses_db") cfg.budget.system_losses_db = number_or_fail(value, path, line_no, key);
            else if (key == "rx_sensitivity_dbm") cfg.budget.rx_sensitivity_dbm = number_or_fail(value, path, line_no, key);
            else if (key == "link_margin_db") cfg.budget.link_margin_db = number_or_fail(value, path, line_no, key);
            else fail(path, line_no, "unknown key \"" + key + "\" in [budget]");
        } else if (section == "kernel") {
            if (key == "sim_lo") cfg.sim_lo = number_or_fail(value, path, line_no, key);
            else if (key == "sim_hi") cfg.sim_hi = number_or_fail(value, path, line_no, key);
            else if (key == "pl_min_db") cfg.pl_min_db = number_or_fail(value, path, line_no, key);
            else fail(path, line_no, "unknown key \"" + key + "\" in [kernel]");
        } else if (section == "cluster") {
            if (key == "k") cfg.k = int_or_fail(value, path, line_no, key);
            else if (key == "capacity") cfg.capacity = int_or_fail(value, path, line_no, key);
            else if (key == "dimension") cfg.dimension = int_or_fail(value, path, line_no, key);
            else if (key == "seed") cfg.seed = uint_or_fail(value, path, line_no, key);
            else if (key == "restarts") cfg.restarts = int_or_fail(value, path, line_no, key);
            else if (key == "max_iters") cfg.max_iters = int_or_fail(value, path, line_no, key);
            else if (key == "tol") cfg.tol = number_or_fail(value, path, line_no, key);
            else if (key == "assign_mode") cfg.assign_mode = parse_assign_mode(value);
            else if (key == "enforce_lower_bound") cfg.enforce_lower_bound = bool_or_fail(value, path, line_no, key);
            else fail(path, line_no, "unknown key \"" + key + "\" in [cluster]");
        } else {
            fail(path, line_no, "key \"" + key + "\" outside any section");
        }
    }
    return cfg;
}

void validate(const PlanConfig& cfg)
{
    if (cfg.roster_path.empty()) throw ConfigError("config: roster path not set");
    if (cfg.pathloss_path.empty()) throw ConfigError("config: pathloss path not set");
    if (cfg.output_dir.empty()) throw ConfigError("config: output directory not set");
    if (!std::filesystem::exists(cfg.roster_path))
        throw ConfigError("config: roster file does not exist: " + cfg.roster_path.string());
    if (!std::filesystem::exists(cfg.pathloss_path))
        throw ConfigError("config: pathloss file does not exist: " + cfg.pathloss_path.string());

    try {
        meshplan::validate(cfg.budget);
        if (!(cfg.sim_hi > 0.0 && cfg.sim_hi < cfg.sim_lo && cfg.sim_lo < 1.0))
            throw std::invalid_argument("kernel: require 0 < sim_hi < sim_lo < 1");
        if (cfg.pl_min_db && !(*cfg.pl_min_db > 0.0))
            throw std::invalid_argument("kernel: pl_min_db must be > 0");
        meshplan::validate(cluster_config(cfg));
        if (cfg.dimension && *cfg.dimension < 1)
            throw std::invalid_argument("cluster: dimension must be >= 1");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ClusterConfig cluster_config(const PlanConfig& cfg)
{
    ClusterConfig out;
    out.k = cfg.k;
    out.capacity = cfg.capacity;
    out.max_iters = cfg.max_iters;
    out.tol = cfg.tol;
    out.seed = cfg.seed;
    out.restarts = cfg.restarts;
    out.assign_mode = cfg.assign_mode;
    out.enforce_lower_bound = cfg.enforce_lower_bound;
    return out;
}

}  // namespace meshplan
