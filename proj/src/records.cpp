#include "zetalab/records.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab::records {

namespace {

using CT = ColumnType;

const std::map<std::string, Schema>& table() {
    static const std::map<std::string, Schema> t = [] {
        std::vector<Schema> all = {
            {"zeta_point",
             {{"t", CT::real}, {"re", CT::real}, {"im", CT::real}, {"abs", CT::real}, {"method", CT::text},
              {"error_estimate", CT::real}}},
            {"mean_square",
             {{"kind", CT::text}, {"t_or_T", CT::real}, {"U", CT::optional_real}, {"value", CT::real},
              {"nodes", CT::integer}, {"method", CT::text}, {"error_estimate", CT::real}}},
            {"expsum",
             {{"sum_kind", CT::text}, {"T", CT::real}, {"H", CT::real}, {"H1", CT::real}, {"M", CT::real},
              {"M1", CT::real}, {"re", CT::real}, {"im", CT::real}, {"abs", CT::real}, {"term_count", CT::integer}}},
            {"wh_ratio",
             {{"T", CT::real}, {"M", CT::real}, {"M1", CT::real}, {"h", CT::integer}, {"ratio", CT::real}}},
            {"spacing",
             {{"system", CT::text}, {"K", CT::integer}, {"L", CT::integer}, {"eta", CT::real}, {"nu", CT::optional_integer},
              {"exact", CT::integer}, {"diagonal", CT::integer}, {"bound", CT::real}, {"ratio", CT::real}}},
            {"sieve",
             {{"d", CT::integer}, {"size_x", CT::integer}, {"size_y", CT::integer}, {"q", CT::real}, {"lhs", CT::real},
              {"rhs", CT::real}, {"pair_count", CT::integer}, {"constant", CT::real}, {"seed", CT::integer}}},
            {"exponents", {{"id", CT::text}, {"lhs", CT::text}, {"rhs", CT::text}, {"holds", CT::boolean}}},
            {"nu_table",
             {{"nu", CT::integer}, {"q", CT::text}, {"a", CT::text}, {"b", CT::text}, {"a_decimal", CT::real},
              {"b_decimal", CT::real}}},
            {"l4_identity",
             {{"K", CT::integer}, {"L", CT::integer}, {"moment_parseval", CT::real}, {"moment_quadrature", CT::real},
              {"count", CT::integer}}},
        };
        std::map<std::string, Schema> m;
        for (auto& s : all) m.emplace(s.id, s);
        return m;
    }();
    return t;
}

bool fits(const Value& v, CT type) {
    switch (type) {
        case CT::integer: return std::holds_alternative<std::int64_t>(v);
        case CT::optional_integer: return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<std::monostate>(v);
        case CT::real: return std::holds_alternative<double>(v);
        case CT::optional_real: return std::holds_alternative<double>(v) || std::holds_alternative<std::monostate>(v);
        case CT::text: return std::holds_alternative<std::string>(v);
        case CT::boolean: return std::holds_alternative<bool>(v);
    }
    return false;
}

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, std::monostate>) return "";
            else if constexpr (std::is_same_v<X, std::int64_t>) return std::to_string(x);
            else if constexpr (std::is_same_v<X, double>) return fmt_real(x);
            else if constexpr (std::is_same_v<X, bool>) return x ? "true" : "false";
            else return quote(x);
        },
        v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

Value parse_cell(const std::string& s, CT type) {
    try {
        switch (type) {
            case CT::optional_integer:
                if (s.empty()) return std::monostate{};
                [[fallthrough]];
            case CT::integer: {
                std::size_t n = 0;
                long long v = std::stoll(s, &n);
                if (n != s.size()) break;
                return std::int64_t{v};
            }
            case CT::optional_real:
                if (s.empty()) return std::monostate{};
                [[fallthrough]];
            case CT::real: {
                std::size_t n = 0;
                double v = std::stod(s, &n);
                if (n != s.size()) break;
                return v;
            }
            case CT::text: return s;
            case CT::boolean:
                if (s == "true") return true;
                if (s == "false") return false;
                break;
        }
    } catch (const std::exception&) {
    }
    throw InputError("cannot parse CSV cell '" + s + "'");
}

void check_all(const std::string& schema_id, const std::vector<OutputRecord>& records) {
    schema(schema_id);
    for (const auto& r : records) {
        if (r.schema_id != schema_id) throw InputError("records of schema '" + r.schema_id + "' mixed into '" + schema_id + "'");
        validate(r);
    }
}

}  // namespace

const Schema& schema(const std::string& id) {
    auto it = table().find(id);
    if (it == table().end()) throw InputError("unknown schema: " + id);
    return it->second;
}

std::vector<std::string> schema_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, s] : table()) ids.push_back(id);
    return ids;
}

OutputRecord make_record(const std::string& schema_id, std::vector<Value> row) {
    OutputRecord r{schema_id, std::move(row)};
    validate(r);
    return r;
}

void validate(const OutputRecord& r) {
    const Schema& s = schema(r.schema_id);
    if (r.row.size() != s.columns.size()) throw InputError("row width does not match schema " + s.id);
    for (std::size_t i = 0; i < r.row.size(); ++i)
        if (!fits(r.row[i], s.columns[i].type))
            throw InputError("column " + s.columns[i].name + " of " + s.id + " has the wrong type");
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw InputError("unknown format: " + s);
}

std::string to_csv(const std::string& schema_id, const std::vector<OutputRecord>& records) {
    check_all(schema_id, records);
    const Schema& s = schema(schema_id);
    std::string out;
    for (std::size_t i = 0; i < s.columns.size(); ++i) out += (i ? "," : "") + s.columns[i].name;
    out += '\n';
    for (const auto& r : records) {
        for (std::size_t i = 0; i < r.row.size(); ++i) out += (i ? "," : "") + cell(r.row[i]);
        out += '\n';
    }
    return out;
}

std::string to_json(const std::string& schema_id, const std::vector<OutputRecord>& records) {
    check_all(schema_id, records);
    const Schema& s = schema(schema_id);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < r.row.size(); ++i)
            std::visit(
                [&](const auto& x) {
                    using X = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<X, std::monostate>) o[s.columns[i].name] = nullptr;
                    else o[s.columns[i].name] = x;
                },
                r.row[i]);
        rows.push_back(o);
    }
    nlohmann::ordered_json doc;
    doc["schema"] = schema_id;
    doc["records"] = rows;
    return doc.dump(2) + "\n";
}

std::vector<OutputRecord> parse_csv(const std::string& schema_id, const std::string& text) {
    const Schema& s = schema(schema_id);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InputError("CSV has no header");
    auto header = split_csv_line(line);
    if (header.size() != s.columns.size()) throw InputError("CSV header does not match schema " + schema_id);
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] != s.columns[i].name) throw InputError("CSV header does not match schema " + schema_id);
    std::vector<OutputRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != s.columns.size()) throw InputError("CSV row width does not match schema " + schema_id);
        OutputRecord r{schema_id, {}};
        for (std::size_t i = 0; i < cells.size(); ++i) r.row.push_back(parse_cell(cells[i], s.columns[i].type));
        out.push_back(std::move(r));
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f.flush()) throw IoError("cannot write " + path.string());
}

void emit(const std::string& schema_id, const std::vector<OutputRecord>& records, Format format,
          const std::filesystem::path& path) {
    write_text(path, format == Format::csv ? to_csv(schema_id, records) : to_json(schema_id, records));
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = nlohmann::ordered_json(parameters);
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["artifact_version"] = artifact_version;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace zetalab::records
