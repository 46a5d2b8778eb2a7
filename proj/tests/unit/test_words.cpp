#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace cat0lab;

TEST_CASE("reduce cancels adjacent inverse pairs") {
    CHECK(words::reduce("aA") == "");
    CHECK(words::reduce("abBA") == "");
    CHECK_THROWS(words::reduce("abBc"));
    CHECK(words::reduce("baAb") == "bb");
    CHECK(words::is_reduced("abAB"));
    CHECK_FALSE(words::is_reduced("abBa"));
}

TEST_CASE("multiply and inverse form a group") {
    sampling::Engine rng(3);
    for (int i = 0; i < 200; ++i) {
        const std::string u = sampling::random_word(rng, 1 + i % 7);
        const std::string v = sampling::random_word(rng, i % 5);
        const std::string w = sampling::random_word(rng, i % 4);
        CHECK(words::multiply(u, words::inverse(u)) == "");
        CHECK(words::multiply(words::multiply(u, v), w) == words::multiply(u, words::multiply(v, w)));
        CHECK(words::is_reduced(words::multiply(u, v)));
    }
}

TEST_CASE("cyclic_reduce splits off the conjugator") {
    const auto d = words::cyclic_reduce("abaBA");
    CHECK(d.conjugator == "ab");
    CHECK(d.core == "a");
    CHECK(words::multiply(words::multiply(d.conjugator, d.core), words::inverse(d.conjugator)) == "abaBA");
    CHECK(words::cyclic_reduce("ab").core == "ab");
}

TEST_CASE("normalize_infinite gives one form per infinite word") {
    // a (ba)^inf == (ab)^inf
    const T4Boundary x = words::normalize_infinite("a", "ba");
    const T4Boundary y = words::normalize_infinite("", "ab");
    CHECK(x.prefix == y.prefix);
    CHECK(x.period == y.period);
    // period powers collapse to the primitive root
    CHECK(words::normalize_infinite("b", "aa").period == "a");
    // prefix ending in the period's inverse letter cancels
    const T4Boundary z = words::normalize_infinite("bA", "a");
    CHECK(words::take(z, 6) == words::take(words::normalize_infinite("b", "a"), 6));
    CHECK(words::take(z, 6) == "baaaaa");
}

TEST_CASE("reduced word indexing is a bijection, checked by enumeration") {
    for (std::size_t n = 0; n <= 5; ++n) {
        std::set<std::string> all;
        // brute force: every word over aAbB of length n that is reduced
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= 4;
        for (std::size_t code = 0; code < total; ++code) {
            std::string w;
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 4) w.push_back("aAbB"[c % 4]);
            if (words::is_reduced(w)) all.insert(w);
        }
        CHECK(all.size() == words::count_reduced(n));
        std::set<std::size_t> indices;
        for (const auto& w : all) {
            const std::size_t i = words::index_of_reduced(w);
            CHECK(i < words::count_reduced(n));
            CHECK(words::reduced_from_index(i, n) == w);
            indices.insert(i);
        }
        CHECK(indices.size() == all.size());
    }
}

TEST_CASE("left multiplication of infinite words") {
    const T4Boundary xi = words::normalize_infinite("ab", "a");
    CHECK(words::take(words::multiply("BA", xi), 4) == "aaaa");
    CHECK(words::take(words::multiply("b", xi), 5) == "babaa");
    CHECK(words::common_prefix("abB", xi) == 2);
}
