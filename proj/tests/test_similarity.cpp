#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "nts/errors.hpp"
#include "nts/normalize.hpp"
#include "nts/similarity.hpp"

using namespace nts;

namespace {

NormalizedDomain domain_of(const Table& t, const char* attr) {
    return extract_domain(t, attr);
}

double jsd_between(const Table& a, const char* attr_a, const Table& b, const char* attr_b) {
    const NormalizedDomain da = extract_domain(a, attr_a);
    const NormalizedDomain db = extract_domain(b, attr_b);
    const auto support = union_support(da, db);
    return jsd(domain_distribution(da, support), domain_distribution(db, support));
}

}  // namespace

TEST_CASE("union_support is the sorted union of the set views") {
    const Table a = make_table("a", {"x"}, {{"b"}, {"a"}});
    const Table b = make_table("b", {"x"}, {{"c"}, {"a"}});
    CHECK(union_support(domain_of(a, "x"), domain_of(b, "x")) ==
          std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("domain_distribution spreads mass by multiset frequency") {
    const Table t = make_table("t", {"x"}, {{"a"}, {"a"}, {"b"}});
    const auto d = domain_distribution(domain_of(t, "x"), {"a", "b", "c"});
    REQUIRE(d.support.size() == 3);
    CHECK(d.mass[0] == 2.0 / 3.0);
    CHECK(d.mass[1] == 1.0 / 3.0);
    CHECK(d.mass[2] == 0.0);
}

TEST_CASE("domain_distribution requires the support to cover the domain") {
    const Table t = make_table("t", {"x"}, {{"a"}, {"d"}});
    CHECK_THROWS_AS(domain_distribution(domain_of(t, "x"), {"a", "b"}), ValidationError);
}

TEST_CASE("jaccard overlap") {
    const Table a = make_table("a", {"x"}, {{"a"}, {"b"}, {"c"}});
    const Table b = make_table("b", {"x"}, {{"b"}, {"c"}, {"d"}});
    CHECK(jaccard(domain_of(a, "x"), domain_of(b, "x")) == 0.5);

    const Table n = make_table("n", {"x"}, {{std::nullopt}});
    CHECK(jaccard(domain_of(n, "x"), domain_of(n, "x")) == 1.0);
    CHECK(jaccard(domain_of(a, "x"), domain_of(n, "x")) == 0.0);
}

TEST_CASE("jsd is exactly 0 on identical and exactly 1 on disjoint distributions") {
    const Table q = fixtures::art_query();
    const Table t1 = fixtures::art_t1();
    CHECK(jsd_between(q, "Artist", q, "Artist") == 0.0);
    CHECK(jsd_between(q, "Artist", t1, "Artist") == 1.0);
}

TEST_CASE("jsd on the shared-artist and shared-medium fixtures") {
    const Table q = fixtures::art_query();
    const Table t1 = fixtures::art_t1();
    const Table t2 = fixtures::art_t2();

    // one of three artists shared, remaining mass split 2:1
    const double artist = jsd_between(q, "Artist", t2, "Artist");
    CHECK(artist == doctest::Approx(0.81649658092772603).epsilon(1e-13));
    CHECK(artist == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-13));

    // one of two media shared
    const double medium = jsd_between(q, "Medium", t1, "Medium");
    CHECK(medium == doctest::Approx(0.43689186833942056).epsilon(1e-13));

    // symmetric either way around
    CHECK(jsd_between(t2, "Artist", q, "Artist") == artist);
}

TEST_CASE("jsd insists on a shared support") {
    Distribution a{{"x", "y"}, {0.5, 0.5}};
    Distribution b{{"x"}, {1.0}};
    CHECK_THROWS_AS(jsd(a, b), ValidationError);
}

TEST_CASE("syn_sim switches representation on the union size") {
    const Table a = make_table("a", {"x"}, {{"a"}, {"a"}, {"b"}});
    const Table b = make_table("b", {"x"}, {{"a"}, {"b"}, {"b"}});
    const NormalizedDomain da = domain_of(a, "x");
    const NormalizedDomain db = domain_of(b, "x");

    // union of two values: above the threshold it is plain set overlap
    CHECK(syn_sim(da, db, 1) == 1.0);
    // at or below the threshold it compares the distributions
    const auto support = union_support(da, db);
    const double expect =
        1.0 - jsd(domain_distribution(da, support), domain_distribution(db, support));
    CHECK(syn_sim(da, db, 2) == expect);
    CHECK(expect < 1.0);
}

TEST_CASE("syn_sim on empty domains") {
    const Table n = make_table("n", {"x"}, {{std::nullopt}});
    const Table a = make_table("a", {"x"}, {{"a"}});
    CHECK(syn_sim(domain_of(n, "x"), domain_of(n, "x"), 20) == 1.0);
    CHECK(syn_sim(domain_of(n, "x"), domain_of(a, "x"), 20) == 0.0);
    CHECK(syn_sim(domain_of(a, "x"), domain_of(n, "x"), 20) == 0.0);
}

TEST_CASE("syn_sim table overload matches the domain overload") {
    const Table q = fixtures::art_query();
    const Table t1 = fixtures::art_t1();
    CHECK(syn_sim(q, "Medium", t1, "Medium", 5) ==
          syn_sim(domain_of(q, "Medium"), domain_of(t1, "Medium"), 5));
}

TEST_CASE("cosine basics") {
    const std::vector<double> x{1.0, 0.0};
    const std::vector<double> y{0.0, 1.0};
    const std::vector<double> xy{1.0, 1.0};
    CHECK(cosine(x, y) == 0.0);
    CHECK(cosine(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine(x, xy) == doctest::Approx(0.70710678118654746).epsilon(1e-15));

    const std::vector<double> neg{-1.0, 0.0};
    CHECK(cosine(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));

    const std::vector<double> short_vec{1.0};
    CHECK_THROWS_AS(cosine(x, short_vec), ValidationError);
    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(cosine(x, zero), ValidationError);
}

TEST_CASE("embedding store enforces one dimension per kind") {
    EmbeddingStore store;
    store.add_attribute_vector("t", "a", {1.0, 0.0});
    CHECK_THROWS_AS(store.add_attribute_vector("t", "b", {1.0}), ValidationError);
    store.add_table_vector("t", {1.0, 0.0, 0.0});  // table vectors are independent
    CHECK(store.attribute_dim() == 2);
    CHECK(store.table_dim() == 3);
}

TEST_CASE("embedding store rejects duplicates, zero vectors and bad components") {
    EmbeddingStore store;
    store.add_attribute_vector("t", "a", {1.0});
    CHECK_THROWS_AS(store.add_attribute_vector("t", "a", {2.0}), ValidationError);
    CHECK_THROWS_AS(store.add_table_vector("z", {0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(store.add_table_vector("z", {}), ValidationError);
    CHECK_THROWS_AS(store.add_table_vector("z", {std::nan("")}), ValidationError);
    CHECK(store.has_attribute_vector("t", "a"));
    CHECK_FALSE(store.has_table_vector("t"));
    CHECK_THROWS_AS((void)store.table_vector("t"), ValidationError);
}

TEST_CASE("sem_sim is the raw cosine, table_sim is clamped") {
    EmbeddingStore store;
    store.add_attribute_vector("q", "a", {1.0, 0.0});
    store.add_attribute_vector("c", "b", {-1.0, 0.0});
    CHECK(sem_sim(store, "q", "a", "c", "b") == doctest::Approx(-1.0).epsilon(1e-15));

    store.add_table_vector("q", {1.0, 0.0});
    store.add_table_vector("c", {-1.0, 0.0});
    CHECK(table_sim(store, "q", "c") == 0.0);
    store.add_table_vector("same", {2.0, 0.0});
    CHECK(table_sim(store, "q", "same") <= 1.0);
}
