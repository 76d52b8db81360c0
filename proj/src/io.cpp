#include "nts/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "nts/errors.hpp"
#include "nts/normalize.hpp"

namespace nts {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw IoError("failed to format a floating point value");
    return std::string(buf, ptr);
}

double parse_double(std::string_view s, const std::string& context) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw IoError(context + ": bad number '" + std::string(s) + "'");
    return v;
}

std::size_t parse_size(std::string_view s, const std::string& context) {
    std::size_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw IoError(context + ": bad count '" + std::string(s) + "'");
    return v;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed while reading '" + path.string() + "'");
    return std::move(buf).str();
}

bool needs_quoting(std::string_view field) {
    return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_csv_field(std::string& out, std::string_view field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
}

void append_csv_row(std::string& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(',');
        append_csv_field(out, fields[i]);
    }
    out.push_back('\n');
}

// Rows of raw fields. Handles quoted fields, doubled quotes, embedded
// newlines and CRLF endings. Row numbers are 1-based and physical.
std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                const std::string& context) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                    if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
                        throw IoError(context + ": row " + std::to_string(line) +
                                      ": text after closing quote");
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started && !field.empty())
                    throw IoError(context + ": row " + std::to_string(line) +
                                  ": quote inside an unquoted field");
                quoted = true;
                field_started = true;
                ++i;
                break;
            case ',':
                end_field();
                ++i;
                break;
            case '\r':
                ++i;
                if (i < n && text[i] == '\n') ++i;
                end_row();
                ++line;
                break;
            case '\n':
                end_row();
                ++line;
                ++i;
                break;
            default:
                field.push_back(c);
                field_started = true;
                ++i;
                break;
        }
    }
    if (quoted)
        throw IoError(context + ": row " + std::to_string(line) + ": unterminated quote");
    if (field_started || !row.empty()) end_row();  // final row without newline
    return rows;
}

void check_width(const std::vector<std::string>& row, std::size_t want,
                 std::size_t row_number, const std::string& context) {
    if (row.size() != want)
        throw IoError(context + ": row " + std::to_string(row_number) + " has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(want));
}

void check_table_id(const std::string& id) {
    if (id.empty()) throw ValidationError("table id must be non-empty");
    if (id.find("::") != std::string::npos)
        throw ValidationError("table id '" + id + "' must not contain '::'");
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<double> hashed_bag(const std::vector<std::string>& tokens) {
    std::vector<double> v(kHashedEmbeddingDim, 0.0);
    if (tokens.empty()) {
        v[fnv1a64("<empty>") % kHashedEmbeddingDim] = 1.0;
        return v;
    }
    for (const auto& tok : tokens) v[fnv1a64(tok) % kHashedEmbeddingDim] += 1.0;
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path dir =
        path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("failed while writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                      "': " + ec.message());
}

Table read_table(const std::filesystem::path& path) {
    const std::string context = path.string();
    const auto rows = parse_csv(read_file(path), context);
    if (rows.empty()) throw IoError(context + ": non-empty table required");
    const auto& header = rows.front();

    Table t;
    t.table_id = path.stem().string();
    check_table_id(t.table_id);
    t.schema = header;
    if (rows.size() < 2) throw IoError(context + ": non-empty table required");
    std::int64_t id = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], header.size(), r + 1, context);
        Tuple tup{id++, {}};
        tup.values.reserve(header.size());
        for (const auto& cell : rows[r])
            tup.values.push_back(cell.empty() ? Value{} : Value{cell});
        t.tuples.push_back(std::move(tup));
    }
    try {
        validate_table_shape(t);
    } catch (const ValidationError& e) {
        throw IoError(context + ": " + e.what());
    }
    return t;
}

void write_table(const Table& t, const std::filesystem::path& path) {
    validate_table_shape(t);
    if (t.tuples.empty())
        throw ValidationError("non-empty table required: '" + t.table_id + "'");
    std::string out;
    append_csv_row(out, t.schema);
    std::vector<std::string> fields(t.schema.size());
    for (const auto& tup : t.tuples) {
        for (std::size_t i = 0; i < tup.values.size(); ++i)
            fields[i] = tup.values[i].has_value() ? *tup.values[i] : std::string{};
        append_csv_row(out, fields);
    }
    atomic_write_text(path, out);
}

std::vector<Alignment> read_alignments(const std::filesystem::path& path) {
    const std::string context = path.string();
    const auto rows = parse_csv(read_file(path), context);
    if (rows.empty()) throw IoError(context + ": missing header");
    const std::vector<std::string> want = {"query_table", "candidate_table",
                                           "query_attribute", "candidate_attribute"};
    if (rows.front() != want)
        throw IoError(context + ": bad header; expected query_table,candidate_table," +
                      "query_attribute,candidate_attribute");

    std::vector<Alignment> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], 4, r + 1, context);
        const auto& row = rows[r];
        for (const auto& f : row)
            if (f.empty())
                throw IoError(context + ": row " + std::to_string(r + 1) +
                              " has an empty field");
        const auto key = std::make_pair(row[0], row[1]);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, out.size());
            out.push_back(Alignment{row[0], row[1], {}});
            it = index.find(key);
        }
        out[it->second].pairs.push_back(AlignedPair{row[2], row[3]});
    }
    if (out.empty()) throw IoError(context + ": no alignment records");

    for (const auto& a : out) {
        std::set<std::string> qs, cs;
        for (const auto& p : a.pairs) {
            if (!qs.insert(p.query_attribute).second)
                throw IoError(context + ": alignment " + a.query_table_id + " -> " +
                              a.candidate_table_id + " maps attribute '" +
                              p.query_attribute + "' twice");
            if (!cs.insert(p.candidate_attribute).second)
                throw IoError(context + ": alignment " + a.query_table_id + " -> " +
                              a.candidate_table_id + " maps attribute '" +
                              p.candidate_attribute + "' twice");
        }
    }
    return out;
}

void write_alignments(std::span<const Alignment> alignments,
                      const std::filesystem::path& path) {
    std::string out;
    append_csv_row(out, std::vector<std::string>{"query_table", "candidate_table",
                                                 "query_attribute",
                                                 "candidate_attribute"});
    for (const auto& a : alignments) {
        if (a.pairs.empty())
            throw ValidationError("alignment " + a.query_table_id + " -> " +
                                  a.candidate_table_id + " has no pairs");
        for (const auto& p : a.pairs)
            append_csv_row(out,
                           std::vector<std::string>{a.query_table_id, a.candidate_table_id,
                                                    p.query_attribute,
                                                    p.candidate_attribute});
    }
    atomic_write_text(path, out);
}

EmbeddingStore read_embeddings(const std::filesystem::path& path) {
    const std::string context = path.string();
    const std::string text = read_file(path);
    EmbeddingStore store;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;
        }
        const auto where = context + ": line " + std::to_string(line_no);

        const std::size_t t1 = line.find('\t');
        if (t1 == std::string_view::npos)
            throw IoError(where + ": expected key<TAB>dim<TAB>components");
        const std::size_t t2 = line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos)
            throw IoError(where + ": expected key<TAB>dim<TAB>components");
        const std::string key(line.substr(0, t1));
        const std::size_t dim = parse_size(line.substr(t1 + 1, t2 - t1 - 1), where);
        if (dim == 0) throw IoError(where + ": dimension must be positive");

        std::vector<double> v;
        v.reserve(dim);
        std::string_view rest = line.substr(t2 + 1);
        while (!rest.empty()) {
            const std::size_t sp = std::min(rest.find(' '), rest.size());
            if (sp > 0) v.push_back(parse_double(rest.substr(0, sp), where));
            rest = sp == rest.size() ? std::string_view{} : rest.substr(sp + 1);
        }
        if (v.size() != dim)
            throw IoError(where + ": declared dimension " + std::to_string(dim) +
                          " but found " + std::to_string(v.size()) + " components");

        try {
            const std::size_t sep = key.find("::");
            if (sep == std::string::npos)
                store.add_table_vector(key, std::move(v));
            else
                store.add_attribute_vector(key.substr(0, sep), key.substr(sep + 2),
                                           std::move(v));
        } catch (const ValidationError& e) {
            throw IoError(where + ": " + e.what());
        }
    }
    return store;
}

void write_embeddings(const EmbeddingStore& store, const std::filesystem::path& path) {
    std::string out;
    auto line = [&out](const std::string& key, const std::vector<double>& v) {
        out += key;
        out.push_back('\t');
        out += std::to_string(v.size());
        out.push_back('\t');
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) out.push_back(' ');
            out += format_double(v[i]);
        }
        out.push_back('\n');
    };
    for (const auto& [id, v] : store.table_vectors()) {
        check_table_id(id);
        line(id, v);
    }
    for (const auto& [key, v] : store.attribute_vectors()) {
        check_table_id(key.first);
        line(key.first + "::" + key.second, v);
    }
    atomic_write_text(path, out);
}

void write_result(const RankedResult& result, const std::string& query_id,
                  const std::filesystem::path& path) {
    std::string out;
    append_csv_row(out, std::vector<std::string>{"method", "query_id", "l", "rank",
                                                 "table_id", "score"});
    const std::string l = std::to_string(result.entries.size());
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        append_csv_row(out, std::vector<std::string>{
                                result.method, query_id, l, std::to_string(i + 1),
                                result.entries[i].table_id,
                                format_double(result.entries[i].score)});
    }
    atomic_write_text(path, out);
}

ResultFile read_result(const std::filesystem::path& path) {
    const std::string context = path.string();
    const auto rows = parse_csv(read_file(path), context);
    const std::vector<std::string> want = {"method", "query_id", "l",
                                           "rank", "table_id", "score"};
    if (rows.empty() || rows.front() != want)
        throw IoError(context + ": bad header; expected method,query_id,l,rank,table_id,score");
    if (rows.size() < 2) throw IoError(context + ": no result rows");

    ResultFile rf;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], 6, r + 1, context);
        const auto& row = rows[r];
        const auto where = context + ": row " + std::to_string(r + 1);
        if (r == 1) {
            rf.method = row[0];
            rf.query_id = row[1];
            rf.l = parse_size(row[2], where);
        } else if (rf.method != row[0] || rf.query_id != row[1] ||
                   rf.l != parse_size(row[2], where)) {
            throw IoError(where + ": mixed method/query/l in one result file");
        }
        if (parse_size(row[3], where) != r)
            throw IoError(where + ": ranks must run 1..l in order");
        rf.entries.push_back(RankedEntry{row[4], parse_double(row[5], where)});
    }
    if (rf.entries.size() != rf.l)
        throw IoError(context + ": declared l = " + std::to_string(rf.l) + " but found " +
                      std::to_string(rf.entries.size()) + " rows");
    return rf;
}

void write_report(std::span<const MetricRow> rows, const std::filesystem::path& path) {
    std::string out;
    append_csv_row(out, std::vector<std::string>{"method", "query_id", "l", "metric_name",
                                                 "value"});
    for (const auto& r : rows)
        append_csv_row(out, std::vector<std::string>{r.method, r.query_id,
                                                     std::to_string(r.l), r.metric_name,
                                                     format_double(r.value)});
    atomic_write_text(path, out);
}

std::vector<MetricRow> read_report(const std::filesystem::path& path) {
    const std::string context = path.string();
    const auto rows = parse_csv(read_file(path), context);
    const std::vector<std::string> want = {"method", "query_id", "l", "metric_name",
                                           "value"};
    if (rows.empty() || rows.front() != want)
        throw IoError(context + ": bad header; expected method,query_id,l,metric_name,value");
    std::vector<MetricRow> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], 5, r + 1, context);
        const auto& row = rows[r];
        const auto where = context + ": row " + std::to_string(r + 1);
        out.push_back(MetricRow{row[0], row[1], parse_size(row[2], where), row[3],
                                parse_double(row[4], where)});
    }
    return out;
}

void write_manifest(const BenchmarkManifest& m, const std::filesystem::path& path) {
    nlohmann::json j;
    j["query_id"] = m.query_id;
    j["delta"] = m.delta;
    j["seed"] = m.seed;
    j["pool_size"] = m.pool_size;
    j["query_copy_id"] = m.query_copy_id;
    j["diluted_query_id"] = m.diluted_query_id;
    j["provenance"] = m.provenance;
    j["diluted_of"] = m.diluted_of;
    atomic_write_text(path, j.dump(2) + "\n");
}

BenchmarkManifest read_manifest(const std::filesystem::path& path) {
    const std::string context = path.string();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(context + ": " + e.what());
    }
    try {
        BenchmarkManifest m;
        m.query_id = j.at("query_id").get<std::string>();
        m.delta = j.at("delta").get<double>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.pool_size = j.at("pool_size").get<std::size_t>();
        m.query_copy_id = j.at("query_copy_id").get<std::string>();
        m.diluted_query_id = j.at("diluted_query_id").get<std::string>();
        m.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
        m.diluted_of = j.at("diluted_of").get<std::map<std::string, std::string>>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(context + ": " + e.what());
    }
}

bool method_is_ranked(const std::string& method) {
    return method == "ants" || method == "semnov" || method == "er" ||
           method == "sem-baseline";
}

FileCatalog::FileCatalog(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec))
        throw IoError("'" + dir_.string() + "' is not a directory");
    for (const auto& entry : std::filesystem::directory_iterator(dir_, ec)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() != ".csv") continue;
        ids_.push_back(entry.path().stem().string());
    }
    if (ec) throw IoError("cannot list '" + dir_.string() + "': " + ec.message());
    std::sort(ids_.begin(), ids_.end());
}

bool FileCatalog::contains(const std::string& id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

Table FileCatalog::load(const std::string& id) const {
    if (!contains(id))
        throw IoError("no table '" + id + "' under '" + dir_.string() + "'");
    return read_table(dir_ / (id + ".csv"));
}

EmbeddingStore hashed_token_embeddings(std::span<const Table> tables) {
    EmbeddingStore store;
    for (const auto& t : tables) {
        std::vector<std::string> all_tokens;
        for (std::size_t col = 0; col < t.schema.size(); ++col) {
            std::vector<std::string> col_tokens;
            for (const auto& tup : t.tuples) {
                const Value& v = tup.values[col];
                if (!v.has_value()) continue;
                for (auto& tok : normalize_tokens(*v)) {
                    col_tokens.push_back(tok);
                    all_tokens.push_back(std::move(tok));
                }
            }
            store.add_attribute_vector(t.table_id, t.schema[col], hashed_bag(col_tokens));
        }
        store.add_table_vector(t.table_id, hashed_bag(all_tokens));
    }
    return store;
}

}  // namespace nts
