#include "wva/config_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include "wva/errors.hpp"

namespace wva {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid value for " + key + ": '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("invalid integer for " + key + ": '" + text + "'");
    return v;
}

}  // namespace

void apply_key_value(ConfigValues& values, const std::string& key, const std::string& value) {
    if (key == "n") {
        values.n = parse_int(key, value);
    } else if (key == "g") {
        values.g = parse_double(key, value);
    } else if (key == "phi") {
        values.phi = parse_double(key, value);
    } else if (key == "r") {
        values.r = parse_double(key, value);
    } else if (key == "gamma") {
        values.gamma = parse_double(key, value);
    } else if (key == "q_keep_to_discard") {
        values.q_keep_to_discard = parse_double(key, value);
    } else if (key == "q_discard_to_keep") {
        values.q_discard_to_keep = parse_double(key, value);
    } else {
        throw ConfigError("unknown config key: '" + key + "'");
    }
}

ConfigValues load_config_file(const std::string& path, ConfigValues base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        apply_key_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

}  // namespace wva
