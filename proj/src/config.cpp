#include <cpt/config.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <cpt/error.hpp>

namespace cpt {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& context)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw Error(ErrorKind::Config, context + ": not a number: '" + t + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        parts.push_back(trim(item));
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

}

Config Config::parse(const std::string& text, const std::string& origin)
{
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(number);
        if (eq == std::string::npos)
            throw Error(ErrorKind::Config, where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw Error(ErrorKind::Config, where + ": empty key or value");
        if (cfg.has(key))
            throw Error(ErrorKind::Config, where + ": duplicate key '" + key + "'");
        cfg.m_values[key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path);
}

void Config::merge(const Config& overrides)
{
    for (const auto& [k, v] : overrides.m_values)
        m_values[k] = v;
}

void Config::set(const std::string& key, const std::string& value)
{
    m_values[key] = value;
}

std::string Config::get_string(const std::string& key) const
{
    const auto it = m_values.find(key);
    if (it == m_values.end())
        throw Error(ErrorKind::Config, "missing key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const
{
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const
{
    return parse_number(get_string(key), key);
}

double Config::get_double(const std::string& key, double fallback) const
{
    return has(key) ? get_double(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw Error(ErrorKind::Config, key + ": expected true or false, got '" + v + "'");
}

std::vector<double> Config::get_grid(const std::string& key) const
{
    try {
        return parse_grid(get_string(key));
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, key + ": " + e.what());
    }
}

void Config::require_known(const std::set<std::string>& allowed) const
{
    for (const auto& [k, v] : m_values)
        if (allowed.count(k) == 0) {
            std::string list;
            for (const auto& a : allowed)
                list += (list.empty() ? "" : ", ") + a;
            throw Error(ErrorKind::Config, "unknown key '" + k + "' (allowed: " + list + ")");
        }
}

std::vector<double> parse_grid(const std::string& text)
{
    const std::string t = trim(text);
    if (t.rfind("lin:", 0) == 0 || t.rfind("log:", 0) == 0) {
        const auto parts = split(t.substr(4), ':');
        if (parts.size() != 3)
            throw Error(ErrorKind::Config, "range needs min:max:n, got '" + t + "'");
        const double lo = parse_number(parts[0], "range min");
        const double hi = parse_number(parts[1], "range max");
        const double nd = parse_number(parts[2], "range count");
        if (nd < 1.0 || nd != std::floor(nd) || nd > 1e7)
            throw Error(ErrorKind::Config, "range count must be a positive integer");
        const auto n = static_cast<int>(nd);
        const bool log = t[1] == 'o';
        if (log && !(lo > 0.0 && hi > 0.0))
            throw Error(ErrorKind::Config, "log range needs positive bounds");
        std::vector<double> grid(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            grid[static_cast<std::size_t>(i)] =
                log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
        }
        return grid;
    }
    std::vector<double> grid;
    for (const auto& item : split(t, ','))
        grid.push_back(parse_number(item, "grid"));
    if (grid.empty())
        throw Error(ErrorKind::Config, "empty grid");
    return grid;
}

void require_monotone(const std::string& key, const std::vector<double>& values)
{
    if (values.empty())
        throw Error(ErrorKind::Config, key + ": empty grid");
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
        up = up && values[i] > values[i - 1];
        down = down && values[i] < values[i - 1];
    }
    if (!up && !down)
        throw Error(ErrorKind::Config, key + ": grid must be strictly monotone");
}

}
