#include "ffabc/jobconfig.hpp"

#include <fstream>
#include <stdexcept>

#include "ffabc/parser.hpp"

namespace ffabc {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

const FieldSpec* find_field(const std::vector<FieldSpec>& fields, const std::string& key) {
    for (const auto& f : fields)
        if (f.key == key) return &f;
    return nullptr;
}

std::string scalar_to_string(const Json& v, const FieldSpec& f) {
    switch (f.kind) {
        case FieldKind::kString:
        case FieldKind::kRational:
            if (v.is_string()) return v.get<std::string>();
            if (f.kind == FieldKind::kRational && v.is_number_integer())
                return std::to_string(v.get<long long>());
            break;
        case FieldKind::kInteger:
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_string()) return v.get<std::string>();
            break;
        case FieldKind::kBool:
            if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
            break;
        case FieldKind::kStringList:
            break;
    }
    throw std::invalid_argument("config: field '" + f.key + "' has the wrong type");
}

}  // namespace

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trimmed(csv.substr(start)));
            break;
        }
        out.push_back(trimmed(csv.substr(start, comma - start)));
        start = comma + 1;
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

JobConfig config_from_json(const Json& j, const std::string& subcommand,
                           const std::vector<FieldSpec>& fields) {
    if (!j.is_object()) throw std::invalid_argument("config: expected an object");
    JobConfig cfg;
    cfg.subcommand = subcommand;
    for (const auto& [key, value] : j.items()) {
        if (key == "subcommand") {
            if (!value.is_string() || value.get<std::string>() != subcommand)
                throw std::invalid_argument("config: subcommand entry does not match '" +
                                            subcommand + "'");
            continue;
        }
        const FieldSpec* f = find_field(fields, key);
        if (f == nullptr) throw std::invalid_argument("config: unknown key '" + key + "'");
        if (f->kind == FieldKind::kStringList) {
            std::vector<std::string> entries;
            if (value.is_array()) {
                for (const auto& e : value) {
                    if (!e.is_string())
                        throw std::invalid_argument("config: field '" + key +
                                                    "' must list strings");
                    entries.push_back(e.get<std::string>());
                }
            } else if (value.is_string()) {
                entries = split_list(value.get<std::string>());
            } else {
                throw std::invalid_argument("config: field '" + key + "' has the wrong type");
            }
            cfg.lists[key] = std::move(entries);
        } else {
            cfg.values[key] = scalar_to_string(value, *f);
        }
    }
    return cfg;
}

JobConfig load_config_file(const std::string& path, const std::string& subcommand,
                           const std::vector<FieldSpec>& fields) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return config_from_json(j, subcommand, fields);
}

void overlay(JobConfig& cfg, const std::string& key, const std::string& value) {
    cfg.values[key] = value;
}

void overlay_list(JobConfig& cfg, const std::string& key, const std::string& csv) {
    cfg.lists[key] = split_list(csv);
}

const std::string& need(const JobConfig& cfg, const std::string& key) {
    auto it = cfg.values.find(key);
    if (it == cfg.values.end())
        throw std::invalid_argument("missing required field '" + key + "'");
    return it->second;
}

std::vector<std::string> need_list(const JobConfig& cfg, const std::string& key) {
    auto it = cfg.lists.find(key);
    if (it == cfg.lists.end() || it->second.empty())
        throw std::invalid_argument("missing required field '" + key + "'");
    return it->second;
}

long need_long(const JobConfig& cfg, const std::string& key) {
    const std::string& raw = need(cfg, key);
    try {
        std::size_t used = 0;
        long v = std::stol(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("field '" + key + "' is not an integer: '" + raw + "'");
    }
}

Rat need_rat(const JobConfig& cfg, const std::string& key) {
    const std::string& raw = need(cfg, key);
    try {
        RationalFunction f = parse_rational(raw);
        if (!f.is_constant()) throw std::invalid_argument(raw);
        return f.constant_value();
    } catch (const std::exception&) {
        throw std::invalid_argument("field '" + key + "' is not a rational number: '" + raw +
                                    "'");
    }
}

std::optional<std::string> get(const JobConfig& cfg, const std::string& key) {
    auto it = cfg.values.find(key);
    if (it == cfg.values.end()) return std::nullopt;
    return it->second;
}

std::optional<std::vector<std::string>> get_list(const JobConfig& cfg, const std::string& key) {
    auto it = cfg.lists.find(key);
    if (it == cfg.lists.end()) return std::nullopt;
    return it->second;
}

long get_long_or(const JobConfig& cfg, const std::string& key, long fallback) {
    if (!cfg.has(key)) return fallback;
    return need_long(cfg, key);
}

bool get_bool_or(const JobConfig& cfg, const std::string& key, bool fallback) {
    auto it = cfg.values.find(key);
    if (it == cfg.values.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw std::invalid_argument("field '" + key + "' is not a boolean: '" + it->second + "'");
}

}  // namespace ffabc
