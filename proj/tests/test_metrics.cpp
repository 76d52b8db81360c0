#include <doctest.h>

#include "fixtures.hpp"
#include "nts/errors.hpp"
#include "nts/metrics.hpp"

using namespace nts;

namespace {

EvalPool small_pool() {
    EvalPool pool;
    pool.query_id = "Q";
    pool.query_copy_id = "Q__copy";
    pool.diluted_query_id = "Q__copy__diluted";
    pool.originals = {"Q__copy", "T1", "T2"};
    pool.diluted_of = {{"T1", "T1__diluted"},
                       {"T2", "T2__diluted"},
                       {"Q__copy", "Q__copy__diluted"}};
    return pool;
}

RankedResult ranked(std::vector<std::string> ids) {
    RankedResult r;
    r.method = "ants";
    r.ranked = true;
    for (auto& id : ids) r.entries.push_back({std::move(id), 0.0});
    return r;
}

}  // namespace

TEST_CASE("blatant_duplicate flags the query and its copy") {
    const EvalPool pool = small_pool();
    CHECK(blatant_duplicate(ranked({"T1", "T2"}), pool) == 0);
    CHECK(blatant_duplicate(ranked({"T1", "Q"}), pool) == 1);
    CHECK(blatant_duplicate(ranked({"Q__copy", "T1"}), pool) == 1);
    CHECK(blatant_duplicate(ranked({"Q__copy__diluted"}), pool) == 0);
}

TEST_CASE("snm rewards originals ranked above their diluted twins") {
    const EvalPool pool = small_pool();
    CHECK(snm(ranked({"T1", "T1__diluted"}), pool) == 1.0);
    CHECK(snm(ranked({"T1__diluted", "T1"}), pool) == 0.5);
    CHECK(snm(ranked({"T1__diluted", "T2__diluted"}), pool) == 0.0);
}

TEST_CASE("snm charges a diluted twin returned without its original") {
    const EvalPool pool = small_pool();
    CHECK(snm(ranked({"T1__diluted", "T2"}), pool) == 0.5);
    CHECK(snm(ranked({"T1", "T2"}), pool) == 1.0);
}

TEST_CASE("snm reverses the direction for the query copy") {
    const EvalPool pool = small_pool();
    // surfacing the copy above its diluted version is the failure mode
    CHECK(snm(ranked({"Q__copy", "Q__copy__diluted"}), pool) == 0.5);
    CHECK(snm(ranked({"Q__copy__diluted", "Q__copy"}), pool) == 1.0);
    CHECK(snm(ranked({"Q__copy", "T1"}), pool) == 0.5);
    CHECK(snm(ranked({"Q__copy__diluted", "T1"}), pool) == 1.0);
}

TEST_CASE("snm refuses set-valued results") {
    RankedResult r = ranked({"T1"});
    r.ranked = false;
    CHECK_THROWS_WITH_AS(snm(r, small_pool()), doctest::Contains("ssnm"),
                         ValidationError);
}

TEST_CASE("snm and ssnm validate the pool bookkeeping") {
    EvalPool broken = small_pool();
    broken.originals.push_back("T3");  // no diluted twin recorded
    CHECK_THROWS_AS(snm(ranked({"T1"}), broken), ValidationError);
    CHECK_THROWS_AS(ssnm(ranked({"T1"}), broken), ValidationError);
    CHECK_THROWS_AS(snm(ranked({}), small_pool()), ValidationError);
}

TEST_CASE("ssnm only looks at membership") {
    const EvalPool pool = small_pool();
    CHECK(ssnm(ranked({"T1__diluted", "T1"}), pool) == 1.0);  // order forgiven
    CHECK(ssnm(ranked({"T1__diluted", "T2"}), pool) == 0.5);
    CHECK(ssnm(ranked({"T1__diluted", "T2__diluted"}), pool) == 0.0);
    CHECK(ssnm(ranked({"Q__copy", "T1"}), pool) == 0.5);
    CHECK(ssnm(ranked({"Q__copy", "Q__copy__diluted"}), pool) == 1.0);

    RankedResult set_valued = ranked({"T1__diluted", "T1"});
    set_valued.ranked = false;
    CHECK(ssnm(set_valued, pool) == 1.0);
}

TEST_CASE("snm never exceeds ssnm on random draws") {
    const EvalPool pool = small_pool();
    const std::vector<std::string> ids = {"Q",           "Q__copy",     "Q__copy__diluted",
                                          "T1",          "T1__diluted", "T2",
                                          "T2__diluted", "other"};
    oracle::Rng rng(4242);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::string> picked;
        for (const auto& id : ids)
            if (rng.unit() < 0.4) picked.push_back(id);
        if (picked.empty()) picked.push_back(ids[rng.below(ids.size())]);
        // shuffle for a random rank order
        for (std::size_t j = picked.size(); j > 1; --j)
            std::swap(picked[j - 1], picked[rng.below(j)]);

        const RankedResult r = ranked(picked);
        const double s = snm(r, pool);
        const double ss = ssnm(r, pool);
        CHECK(s >= 0.0);
        CHECK(s <= ss);
        CHECK(ss <= 1.0);
    }
}

TEST_CASE("f_value matches its definition on the artwork fixtures") {
    Table q = fixtures::art_query();
    Table t1 = fixtures::art_t1();
    Table t2 = fixtures::art_t2();
    Alignment a1 = fixtures::art_align_t1();
    Alignment a2 = fixtures::art_align_t2();
    EmbeddingStore unit = fixtures::unit_embeddings({&q, &t1, &t2});
    RankRequest req;
    req.query = &q;
    req.pool = {{&t1, &a1}, {&t2, &a2}};
    req.result_count = 2;
    req.embeddings = &unit;

    SUBCASE("the general shape") {
        // unit embeddings: both tablesims are 1; the single pairwise div is 1
        const double got = f_value(req, {"T1", "T2"});
        CHECK(got == doctest::Approx((2 - 1) * (1.0 - 0.7) * 2.0 + 2 * 0.7 * 1.0)
                         .epsilon(1e-12));
    }
    SUBCASE("pure relevance at lambda 0") {
        req.hyper.lambda = 0.0;
        CHECK(f_value(req, {"T1", "T2"}) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("pure diversity at lambda 1") {
        req.hyper.lambda = 1.0;
        CHECK(f_value(req, {"T1", "T2"}) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("empty selections are refused") {
        CHECK_THROWS_AS(f_value(req, {}), ValidationError);
    }
}
