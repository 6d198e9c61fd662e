#include "support.hpp"

#include "segment/encoding.hpp"
#include "segment/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace segment;

namespace {

std::vector<int> decoded(std::vector<double> position) {
    const auto t = decode_position(position);
    return {t.levels().begin(), t.levels().end()};
}

}  // namespace

TEST_SUITE("encoding") {

TEST_CASE("decode_position examples") {
    CHECK(decoded({127.4, 127.6}) == std::vector<int>{127, 128});
    CHECK(decoded({100.2, 100.3, 100.1}) == std::vector<int>{100, 101, 102});
    CHECK(decoded({300.0}) == std::vector<int>{255});
    CHECK(decoded({-4.0, 0.2}) == std::vector<int>{1, 2});
    CHECK(decoded({254.9, 255.0, 260.0}) == std::vector<int>{253, 254, 255});
    CHECK(decoded({}).empty());
}

TEST_CASE("decode_position errors") {
    CHECK_THROWS_AS(decode_position(std::vector<double>(256, 10.0)), Unrepairable);
    CHECK_NOTHROW(decode_position(std::vector<double>(255, 10.0)));
    CHECK(decode_position(std::vector<double>(255, 10.0)).size() == 255);
}

TEST_CASE("decode_position properties") {
    segment::Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = 1 + static_cast<int>(rng.index(trial % 10 == 0 ? 255 : 8));
        std::vector<double> pos(static_cast<std::size_t>(dim));
        for (auto& x : pos) x = rng.uniform(-50.0, 300.0);
        const auto t = decode_position(pos);

        // Always a valid set (the constructor would have thrown otherwise).
        REQUIRE(t.size() == static_cast<std::size_t>(dim));

        std::vector<double> shuffled = pos;
        std::reverse(shuffled.begin(), shuffled.end());
        std::rotate(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(rng.index(shuffled.size())),
                    shuffled.end());
        CHECK(decode_position(shuffled) == t);

        std::vector<double> again(t.levels().begin(), t.levels().end());
        CHECK(decode_position(again) == t);
    }
}

TEST_CASE("objective_adapter composes decoding with the fitness") {
    const auto h = test::histogram_from({{10, 1}, {200, 1}});
    const auto tables = build_tables(h);
    const auto f = objective_adapter(tables);
    CHECK(std::abs(f(std::vector<double>{100.3})) <= 1e-12);
    CHECK(f(std::vector<double>{57.2, 57.4}) == f(std::vector<double>{57.0, 56.9}));

    segment::Rng rng(41);
    const auto rich = test::random_histogram(rng);
    const auto g = objective_adapter(build_tables(rich));
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> pos(3);
        for (auto& x : pos) x = rng.uniform(1.0, 255.0);
        CHECK(g(pos) == mce_fitness(build_tables(rich), decode_position(pos)).value);
    }
}

}
