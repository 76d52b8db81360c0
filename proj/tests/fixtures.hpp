#pragma once

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nts/similarity.hpp"
#include "nts/table.hpp"
#include "oracle.hpp"

// The artwork tables behind most hand-derived expectations, plus converters
// from oracle grids to library structures.
namespace fixtures {

inline nts::Table art_query() {
    return nts::make_table(
        "Q", {"Artwork", "Artist", "Date Created", "Medium", "Style"},
        {
            {"The Mona Lisa", "Leonardo da Vinci", "1503–1506", "Oil on poplar panel",
             "High Renaissance"},
            {"The Hay Wain", "John Constable", "1821", "Oil on canvas", "Romanticism"},
            {"The Burial at Ornans", "Gustave Courbet", "1849–1850", "Oil on canvas",
             "Early Netherlandish"},
        });
}

inline nts::Table art_t1() {
    return nts::make_table(
        "T1", {"Artwork", "Artist", "Date Created", "Medium", "Style", "Condition"},
        {
            {"Water Lilies", "Claude Monet", "1897–1926", "Oil on canvas", "Nature",
             "Good"},
            {"The Swing", "Jean-Honoré Fragonard", "1767", "Oil on canvas", "Figurative",
             "Excellent"},
            {"The Fighting Temeraire", "J.M.W. Turner", "1839", "Oil on canvas",
             "Historical", "Good"},
        });
}

inline nts::Table art_t2() {
    return nts::make_table(
        "T2", {"Artwork", "Artist", "Subject Matter", "Cultural Context"},
        {
            {"Mona Lisa", "Leonardo da Vinci", "Portrait of Lisa Gherardini",
             "Influence on later portraiture"},
            {"The Persistence of Memory", "Salvador Dalí", "Melting clocks",
             "Permanent collection, New York"},
            {"The Persistence of Memory", "Salvador Dalí", "Melting clocks",
             "Museum of Modern Art, New York"},
        });
}

/** art_t1 after one query row has been mixed in; Condition is padded. */
inline nts::Table art_t1_diluted() {
    auto rows = std::vector<std::vector<nts::Value>>{
        {"Water Lilies", "Claude Monet", "1897–1926", "Oil on canvas", "Nature", "Good"},
        {"The Swing", "Jean-Honoré Fragonard", "1767", "Oil on canvas", "Figurative",
         "Excellent"},
        {"The Fighting Temeraire", "J.M.W. Turner", "1839", "Oil on canvas", "Historical",
         "Good"},
        {"The Burial at Ornans", "Gustave Courbet", "1849–1850", "Oil on canvas",
         "Early Netherlandish", std::nullopt},
    };
    return nts::make_table(
        "T1__diluted", {"Artwork", "Artist", "Date Created", "Medium", "Style", "Condition"},
        std::move(rows));
}

inline nts::Alignment art_align_t1() {
    return nts::Alignment{"Q",
                          "T1",
                          {{"Artwork", "Artwork"},
                           {"Artist", "Artist"},
                           {"Date Created", "Date Created"},
                           {"Medium", "Medium"},
                           {"Style", "Style"}}};
}

inline nts::Alignment art_align_t2() {
    return nts::Alignment{"Q", "T2", {{"Artwork", "Artwork"}, {"Artist", "Artist"}}};
}

/** Every attribute and table vector is {1}: all cosines become exactly 1. */
inline nts::EmbeddingStore unit_embeddings(std::initializer_list<const nts::Table*> tables) {
    nts::EmbeddingStore store;
    for (const nts::Table* t : tables) {
        for (const auto& attr : t->schema)
            store.add_attribute_vector(t->table_id, attr, {1.0});
        store.add_table_vector(t->table_id, {1.0});
    }
    return store;
}

/** Candidate tables, their alignments and the pointer view the API takes. */
struct OwnedPool {
    nts::Table query;
    std::vector<nts::Table> tables;
    std::vector<nts::Alignment> alignments;
    std::vector<nts::PoolEntry> entries;
};

inline nts::Table grid_table(const oracle::Grid& g, std::string id,
                             const std::string& attr_prefix) {
    std::vector<std::string> schema;
    for (std::size_t i = 0; i < g.width; ++i)
        schema.push_back(attr_prefix + std::to_string(i));
    std::vector<std::vector<nts::Value>> rows;
    for (const auto& row : g.rows) {
        std::vector<nts::Value> out;
        for (const auto& cell : row)
            out.push_back(cell.has_value() ? nts::Value{*cell} : nts::Value{});
        rows.push_back(std::move(out));
    }
    return nts::make_table(std::move(id), std::move(schema), std::move(rows));
}

/** Candidate ids c00, c01, ... so id order equals index order. */
inline OwnedPool from_instance(const oracle::Instance& inst) {
    OwnedPool pool;
    pool.query = grid_table(inst.query, "q", "q");
    for (std::size_t j = 0; j < inst.cands.size(); ++j) {
        std::string id = "c" + std::string(j < 10 ? "0" : "") + std::to_string(j);
        pool.tables.push_back(grid_table(inst.cands[j], id, "a"));
        nts::Alignment a{"q", pool.tables.back().table_id, {}};
        for (std::size_t i = 0; i < inst.query.width; ++i)
            if (inst.maps[j][i] >= 0)
                a.pairs.push_back(nts::AlignedPair{
                    "q" + std::to_string(i), "a" + std::to_string(inst.maps[j][i])});
        pool.alignments.push_back(std::move(a));
    }
    for (std::size_t j = 0; j < pool.tables.size(); ++j)
        pool.entries.push_back(nts::PoolEntry{&pool.tables[j], &pool.alignments[j]});
    return pool;
}

/** Scratch directory wiped on destruction. */
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "nts_test_XXXXXX").string();
        path = ::mkdtemp(tmpl.data());
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixtures
