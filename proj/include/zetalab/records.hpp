#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace zetalab::records {

/// Output file could not be written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ColumnType { integer, optional_integer, real, optional_real, text, boolean };

struct Column {
    std::string name;
    ColumnType type;
};

struct Schema {
    std::string id;
    std::vector<Column> columns;
};

/// Known schemas: zeta_point, mean_square, expsum, wh_ratio, spacing, l4_identity, sieve, exponents, nu_table.
const Schema& schema(const std::string& id);
std::vector<std::string> schema_ids();

/// std::monostate marks an empty optional.
using Value = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct OutputRecord {
    std::string schema_id;
    std::vector<Value> row;
};

/// Builds a record and checks every value against the schema's column types.
OutputRecord make_record(const std::string& schema_id, std::vector<Value> row);
void validate(const OutputRecord& r);

enum class Format { csv, json };
Format parse_format(const std::string& s);

/// Header plus rows; floats with 17 significant digits. Every record must carry schema_id.
std::string to_csv(const std::string& schema_id, const std::vector<OutputRecord>& records);
std::string to_json(const std::string& schema_id, const std::vector<OutputRecord>& records);
std::vector<OutputRecord> parse_csv(const std::string& schema_id, const std::string& text);

void emit(const std::string& schema_id, const std::vector<OutputRecord>& records, Format format,
          const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string artifact_version;
    std::vector<std::string> outputs;

    std::string to_json() const;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace zetalab::records
