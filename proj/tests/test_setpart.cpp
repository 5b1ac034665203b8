#include <doctest.h>

#include "tautres/setpart.hpp"

using namespace tautres;

TEST_SUITE("setpart") {
  TEST_CASE("enumeration sizes are Bell numbers") {
    CHECK(enumerate_partitions(1).size() == 1);
    CHECK(enumerate_partitions(3).size() == 5);
    CHECK(enumerate_partitions(4).size() == 15);
    for (int k = 1; k <= 8; ++k) CHECK(Integer(enumerate_partitions(k).size()) == bell_number(k));
    CHECK_THROWS(enumerate_partitions(13));
  }

  TEST_CASE("k=3 partitions in canonical order") {
    std::vector<std::string> got;
    for (const auto& p : enumerate_partitions(3)) got.push_back(p.str());
    CHECK(got == std::vector<std::string>{"[[1,2,3]]", "[[1,2],[3]]", "[[1,3],[2]]", "[[1],[2,3]]", "[[1],[2],[3]]"});
  }

  TEST_CASE("blocks are disjoint and cover 1..k") {
    for (const auto& p : enumerate_partitions(6)) {
      std::vector<int> seen(7, 0);
      int last_min = 0;
      for (const auto& b : p.blocks) {
        CHECK(b.front() > last_min);
        last_min = b.front();
        for (int x : b) ++seen[static_cast<std::size_t>(x)];
      }
      for (int x = 1; x <= 6; ++x) CHECK(seen[static_cast<std::size_t>(x)] == 1);
    }
  }

  TEST_CASE("sieve coefficients") {
    CHECK(sieve_coefficient(partition_from_rgs({0, 0, 0})) == 1);
    CHECK(sieve_coefficient(partition_from_rgs({0, 0, 1})) == -1);
    CHECK(sieve_coefficient(partition_from_rgs({0, 1, 2})) == 2);
    // the k=3 expansion: 1, -1, -1, -1, +2
    std::vector<Rational> got;
    for (const auto& p : enumerate_partitions(3)) got.push_back(sieve_coefficient(p));
    CHECK(got == std::vector<Rational>{1, -1, -1, -1, 2});
  }

  TEST_CASE("refinement") {
    const auto fine = partition_from_rgs({0, 1, 2}), a = partition_from_rgs({0, 0, 1}), b = partition_from_rgs({0, 1, 0});
    const auto top = partition_from_rgs({0, 0, 0});
    CHECK(refines(fine, a));
    CHECK_FALSE(refines(a, b));
    for (const auto& p : enumerate_partitions(4)) CHECK(refines(p, partition_from_rgs({0, 0, 0, 0})));
    CHECK(refines(a, top));
  }

  TEST_CASE("refinement is a partial order for k <= 5") {
    for (int k = 1; k <= 5; ++k) {
      const auto all = enumerate_partitions(k);
      for (const auto& x : all) {
        CHECK(refines(x, x));
        for (const auto& y : all) {
          if (refines(x, y) && refines(y, x)) CHECK(x == y);
          if (!refines(x, y)) continue;
          for (const auto& w : all)
            if (refines(y, w)) CHECK(refines(x, w));
        }
      }
    }
  }
}
