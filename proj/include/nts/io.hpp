#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nts/benchmark.hpp"
#include "nts/rankers.hpp"
#include "nts/similarity.hpp"
#include "nts/table.hpp"

namespace nts {

/**
 * Tables travel as UTF-8 CSV with a header row. Empty cells are Null, every
 * other cell is verbatim text; there is no type inference. Fields containing
 * the delimiter, quotes or newlines are quoted, quotes are doubled. Ragged
 * rows fail with the offending row number; a file without data rows fails
 * ("non-empty table required"). The table id is the file stem.
 */
Table read_table(const std::filesystem::path& path);
void write_table(const Table& t, const std::filesystem::path& path);

/**
 * Alignment files are CSV with one row per aligned attribute pair:
 * query_table,candidate_table,query_attribute,candidate_attribute.
 * Rows for one candidate are grouped into a single record; pairs must be
 * one-to-one and every record non-empty.
 */
std::vector<Alignment> read_alignments(const std::filesystem::path& path);
void write_alignments(std::span<const Alignment> alignments,
                      const std::filesystem::path& path);

/**
 * Embeddings travel as text, one vector per line:
 *   key <TAB> dim <TAB> space-separated components
 * where key is either a table id (table vector) or table_id::attribute
 * (attribute vector). Table ids therefore must not contain "::".
 */
EmbeddingStore read_embeddings(const std::filesystem::path& path);
void write_embeddings(const EmbeddingStore& store, const std::filesystem::path& path);

/** One parsed result file. */
struct ResultFile {
    std::string method;
    std::string query_id;
    std::size_t l = 0;
    std::vector<RankedEntry> entries;  // in rank order
};

/**
 * Result files are CSV: method,query_id,l,rank,table_id,score with ranks
 * 1..l in order. Scores use shortest round-trip decimal formatting.
 */
void write_result(const RankedResult& result, const std::string& query_id,
                  const std::filesystem::path& path);
ResultFile read_result(const std::filesystem::path& path);

struct MetricRow {
    std::string method;
    std::string query_id;
    std::size_t l = 0;
    std::string metric_name;
    double value = 0.0;
};

/** Metric reports are CSV: method,query_id,l,metric_name,value. */
void write_report(std::span<const MetricRow> rows, const std::filesystem::path& path);
std::vector<MetricRow> read_report(const std::filesystem::path& path);

void write_manifest(const BenchmarkManifest& m, const std::filesystem::path& path);
BenchmarkManifest read_manifest(const std::filesystem::path& path);

/** Whether a method name produces a relevance order (vs a selected set). */
bool method_is_ranked(const std::string& method);

/** The CSV tables sitting in one directory, keyed by file stem. */
class FileCatalog {
public:
    explicit FileCatalog(std::filesystem::path dir);

    const std::vector<std::string>& table_ids() const { return ids_; }
    bool contains(const std::string& id) const;
    Table load(const std::string& id) const;

private:
    std::filesystem::path dir_;
    std::vector<std::string> ids_;  // sorted
};

/**
 * Test-fixture embedder with no semantic content: each vector is the
 * L2-normalized 64-bin hashed bag of normalized tokens (attribute vectors
 * from that column's cells, table vectors from all cells). Identical content
 * gives identical vectors; nothing more is promised.
 */
EmbeddingStore hashed_token_embeddings(std::span<const Table> tables);

inline constexpr std::size_t kHashedEmbeddingDim = 64;

/** Writes bytes to a temp file in the target directory, then renames. */
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace nts
