#include "conekit/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace conekit {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0' && end != s.c_str();
}

Config::Value parse_value(const std::string& raw, int line_no) {
    std::string v = trim(raw);
    if (v.empty()) throw ConfigError("empty value on line " + std::to_string(line_no));
    if (v.front() == '[') {
        if (v.back() != ']')
            throw ConfigError("unterminated list on line " + std::to_string(line_no));
        std::vector<double> items;
        std::string body = v.substr(1, v.size() - 2);
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            double d;
            if (!parse_number(tok, d))
                throw ConfigError("bad list entry '" + tok + "' on line " +
                                  std::to_string(line_no));
            items.push_back(d);
        }
        return items;
    }
    if (v == "true") return true;
    if (v == "false") return false;
    double d;
    if (parse_number(v, d)) return d;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;  // bare string
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("bad section header on line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value on line " + std::to_string(line_no));
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key on line " + std::to_string(line_no));
        cfg.sections_[section][key] = parse_value(line.substr(eq + 1), line_no);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ConfigError("cannot open config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

const Config::Value* Config::find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

double Config::number(const std::string& section, const std::string& key,
                      double fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (const double* d = std::get_if<double>(v)) return *d;
    throw ConfigError("[" + section + "] " + key + " is not a number");
}

double Config::number_req(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ConfigError("missing [" + section + "] " + key);
    return number(section, key, 0.0);
}

int Config::integer(const std::string& section, const std::string& key, int fallback) const {
    return int(number(section, key, fallback));
}

bool Config::boolean(const std::string& section, const std::string& key, bool fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (const bool* b = std::get_if<bool>(v)) return *b;
    throw ConfigError("[" + section + "] " + key + " is not a boolean");
}

std::string Config::str(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (const std::string* s = std::get_if<std::string>(v)) return *s;
    throw ConfigError("[" + section + "] " + key + " is not a string");
}

std::vector<double> Config::list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (const auto* l = std::get_if<std::vector<double>>(v)) return *l;
    if (const double* d = std::get_if<double>(v)) return {*d};
    throw ConfigError("[" + section + "] " + key + " is not a list");
}

void Config::set(const std::string& section, const std::string& key, Value v) {
    sections_[section][key] = std::move(v);
}

std::string Config::canonical() const {
    std::ostringstream os;
    for (const auto& [sec, kv] : sections_) {
        os << "[" << sec << "]\n";
        for (const auto& [key, val] : kv) {
            os << key << " = ";
            if (const double* d = std::get_if<double>(&val)) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", *d);
                os << buf;
            } else if (const bool* b = std::get_if<bool>(&val)) {
                os << (*b ? "true" : "false");
            } else if (const std::string* s = std::get_if<std::string>(&val)) {
                os << *s;
            } else if (const auto* l = std::get_if<std::vector<double>>(&val)) {
                os << "[";
                for (std::size_t i = 0; i < l->size(); ++i) {
                    char buf[40];
                    std::snprintf(buf, sizeof buf, "%.17g", (*l)[i]);
                    os << (i ? ", " : "") << buf;
                }
                os << "]";
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace conekit
