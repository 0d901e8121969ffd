#include "vortexbound/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vortexbound/errors.hpp"

namespace vortexbound {

namespace {

std::string number_text(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    }
    return true;
}

}  // namespace

ConfigValues parse_config_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");
    ConfigValues out;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const auto& v = it.value();
        if (v.is_number()) {
            out[it.key()] = v.is_number_integer() ? std::to_string(v.get<long long>())
                                                  : number_text(v.get<double>());
        } else if (v.is_string()) {
            out[it.key()] = v.get<std::string>();
        } else if (v.is_boolean()) {
            out[it.key()] = v.get<bool>() ? "true" : "false";
        } else {
            throw ValidationError("config: key '" + it.key() + "' must be a number, string or boolean");
        }
    }
    return out;
}

ConfigValues parse_config_toml(const std::string& text) {
    ConfigValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        char quote = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '"' || body[i] == '\'') {
                if (!quote) {
                    quote = body[i];
                } else if (quote == body[i]) {
                    quote = 0;
                }
            }
            if (body[i] == '#' && !quote) {
                body.resize(i);
                break;
            }
        }
        body = trim(body);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value' (tables and arrays are not supported)");
        }
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (!valid_key(key)) throw ValidationError("config line " + std::to_string(lineno) + ": bad key");
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front()) {
            value = value.substr(1, value.size() - 2);
        } else if (value.empty() || value.front() == '[' || value.front() == '{') {
            throw ValidationError("config line " + std::to_string(lineno) + ": unsupported value");
        }
        if (out.count(key)) throw ValidationError("config: duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

ConfigValues load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const bool toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
    return toml ? parse_config_toml(buf.str()) : parse_config_json(buf.str());
}

}  // namespace vortexbound
