// key = value run configuration.
//
// Grid values accept a comma list ("0.5, 1, 2"), "lin:min:max:n" or
// "log:min:max:n". Blank lines and text after '#' are ignored.

#ifndef CPT_CONFIG_HPP
#define CPT_CONFIG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cpt {

class Config
{
public:
    /// Throws Error(Config) on malformed lines or duplicate keys. `origin`
    /// names the source in messages.
    static Config parse(const std::string& text, const std::string& origin = "config");
    /// Throws Error(Io) when the file cannot be read.
    static Config load(const std::string& path);

    /// Keys of `overrides` replace those of *this.
    void merge(const Config& overrides);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return m_values.count(key) != 0; }
    const std::map<std::string, std::string>& values() const { return m_values; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_grid(const std::string& key) const;

    /// Throws Error(Config) naming the first key outside `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

private:
    std::map<std::string, std::string> m_values;
};

/// Parses a grid value. Throws Error(Config) on malformed or empty input.
std::vector<double> parse_grid(const std::string& text);

/// Throws Error(Config) unless the values are strictly monotone.
void require_monotone(const std::string& key, const std::vector<double>& values);

}

#endif
