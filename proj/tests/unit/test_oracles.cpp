#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace {

// Centre occupation of a k x k box by direct enumeration of all 2^(k*k)
// configurations, with the ring spins entering as forbidden sites.
template <class Ring>
double brute_centre(int k, double lambda, Ring occupied) {
  double z = 0.0, zc = 0.0;
  const int n = k * k;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    auto at = [&](int x, int y) {
      if (x < 0 || x >= k || y < 0 || y >= k) return static_cast<bool>(occupied(x, y));
      return ((s >> (x * k + y)) & 1u) != 0;
    };
    bool ok = true;
    double w = 1.0;
    for (int x = 0; x < k && ok; ++x)
      for (int y = 0; y < k && ok; ++y) {
        if (!at(x, y)) continue;
        w *= lambda;
        if (at(x + 1, y) || at(x - 1, y) || at(x, y + 1) || at(x, y - 1)) ok = false;
      }
    if (!ok) continue;
    z += w;
    if (at(k / 2, k / 2)) zc += w;
  }
  return zc / z;
}

}  // namespace

TEST(LatticeOracle, TransferMatrixMatchesBruteForce) {
  auto empty = [](int, int) { return false; };
  auto even = [](int x, int y) { return ((x + y) % 2 + 2) % 2 == 0; };
  auto odd = [](int x, int y) { return ((x + y) % 2 + 2) % 2 == 1; };
  for (double lambda : {0.3, 1.0, 2.0}) {
    for (int k : {3, 5}) {
      EXPECT_NEAR(oracle::centre_occupation(k, lambda, empty), brute_centre(k, lambda, empty), 1e-12);
      EXPECT_NEAR(oracle::centre_occupation(k, lambda, even), brute_centre(k, lambda, even), 1e-12);
      EXPECT_NEAR(oracle::centre_occupation(k, lambda, odd), brute_centre(k, lambda, odd), 1e-12);
    }
  }
  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    std::uint64_t mask = rng();
    auto ring = [mask](int x, int y) { return ((mask >> (((x + 1) * 7 + (y + 1)) % 64)) & 1u) != 0; };
    EXPECT_NEAR(oracle::centre_occupation(3, 0.7, ring), brute_centre(3, 0.7, ring), 1e-12);
  }
}

TEST(LatticeOracle, SingleSiteClosedForm) {
  auto empty = [](int, int) { return false; };
  EXPECT_NEAR(oracle::centre_occupation(1, 0.5, empty), 0.5 / 1.5, 1e-15);
  auto full = [](int, int) { return true; };
  EXPECT_EQ(oracle::centre_occupation(1, 0.5, full), 0.0);
}

TEST(ChiSquareOracle, EvenTailsAgreeWithLowOrderForms) {
  for (double x : {0.1, 1.0, 4.0, 12.0}) EXPECT_NEAR(oracle::chi2_sf_even(x, 2), oracle::chi2_sf_df2(x), 1e-15);
}
