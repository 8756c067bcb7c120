#ifndef FFABC_JOBCONFIG_HPP
#define FFABC_JOBCONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffabc/rat.hpp"
#include "ffabc/report.hpp"

namespace ffabc {

/* Parameters of one job, collected from a config file and command-line
 * flags.  Everything is kept as strings until a handler asks for a typed
 * value; the flags win over the file, field by field. */
struct JobConfig {
    std::string subcommand;
    std::map<std::string, std::string> values;
    std::map<std::string, std::vector<std::string>> lists;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    bool has_list(const std::string& key) const { return lists.count(key) != 0; }
};

enum class FieldKind { kString, kStringList, kInteger, kRational, kBool };

struct FieldSpec {
    std::string key;
    FieldKind kind;
};

/* Checks the tree against the field table: unknown keys and wrong value
 * shapes are input errors.  A "subcommand" entry must match the invoked
 * subcommand.  List fields accept an array of strings or one comma-separated
 * string. */
JobConfig config_from_json(const Json& j, const std::string& subcommand,
                           const std::vector<FieldSpec>& fields);

JobConfig load_config_file(const std::string& path, const std::string& subcommand,
                           const std::vector<FieldSpec>& fields);

// comma-separated, entries trimmed of surrounding whitespace
std::vector<std::string> split_list(const std::string& csv);

void overlay(JobConfig& cfg, const std::string& key, const std::string& value);
void overlay_list(JobConfig& cfg, const std::string& key, const std::string& csv);

// typed access; a missing or malformed field is an input error naming the key
const std::string& need(const JobConfig& cfg, const std::string& key);
std::vector<std::string> need_list(const JobConfig& cfg, const std::string& key);
long need_long(const JobConfig& cfg, const std::string& key);
Rat need_rat(const JobConfig& cfg, const std::string& key);
std::optional<std::string> get(const JobConfig& cfg, const std::string& key);
std::optional<std::vector<std::string>> get_list(const JobConfig& cfg, const std::string& key);
long get_long_or(const JobConfig& cfg, const std::string& key, long fallback);
bool get_bool_or(const JobConfig& cfg, const std::string& key, bool fallback);

}  // namespace ffabc

#endif
