#include <doctest.h>

#include <random>

#include "roicomp/segmentation.hpp"

using namespace roicomp;

namespace {

ProbabilityMap uniform_map(int w, int h, std::uint8_t v) {
    return ProbabilityMap(w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, v));
}

// Oracle: independent connected-component sizing by label propagation to a
// fixpoint (deliberately a different algorithm than the flood fill under test).
std::vector<std::size_t> component_sizes_oracle(const RoiMask& m) {
    const int w = m.width();
    const int h = m.height();
    std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
    int next = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (m.get(x, y)) label[static_cast<std::size_t>(y) * w + x] = next++;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                if (label[i] < 0) continue;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int qx = x + dx;
                        const int qy = y + dy;
                        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                        const std::size_t q = static_cast<std::size_t>(qy) * w + qx;
                        if (label[q] >= 0 && label[q] < label[i]) {
                            label[i] = label[q];
                            changed = true;
                        }
                    }
            }
    }
    std::vector<std::size_t> sizes;
    for (int root = 0; root < next; ++root) {
        std::size_t s = 0;
        for (int v : label)
            if (v == root) ++s;
        if (s > 0) sizes.push_back(s);
    }
    return sizes;
}

RoiMask random_mask(std::mt19937& rng, int w, int h, int fill_percent) {
    RoiMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            m.set(x, y, static_cast<int>(rng() % 100) < fill_percent);
    return m;
}

}  // namespace

TEST_CASE("threshold_map endpoint and boundary behavior") {
    CHECK(threshold_map(uniform_map(4, 4, 0), 0.5).empty_mask());
    CHECK(threshold_map(uniform_map(4, 4, 255), 0.5).count() == 16);

    // probabilities {0.2, ~0.5, 0.8} on a 3x1 map
    const ProbabilityMap m(3, 1, {51, 128, 204});
    const RoiMask r = threshold_map(m, 0.5);
    CHECK_FALSE(r.get(0, 0));
    CHECK(r.get(1, 0));
    CHECK(r.get(2, 0));

    // exact boundary: v/255 == t compares as >=
    const ProbabilityMap b(1, 1, {51});
    CHECK(threshold_map(b, 51.0 / 255.0).get(0, 0));

    CHECK_THROWS_AS(threshold_map(m, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(threshold_map(m, 1.01), std::invalid_argument);
}

TEST_CASE("threshold monotonicity: higher cutoff never adds pixels") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::uint8_t> vals(64);
        for (auto& v : vals) v = static_cast<std::uint8_t>(rng());
        const ProbabilityMap m(8, 8, vals);
        const double t1 = (rng() % 100) / 100.0;
        const double t2 = std::min(1.0, t1 + (rng() % 50) / 100.0);
        const RoiMask lo = threshold_map(m, t1);
        const RoiMask hi = threshold_map(m, t2);
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                if (hi.get(x, y)) CHECK(lo.get(x, y));
    }
}

TEST_CASE("largest_component keeps exactly the biggest component") {
    SUBCASE("empty mask stays empty") {
        CHECK(largest_component(RoiMask(6, 6)).empty_mask());
    }
    SUBCASE("five-pixel component beats three-pixel component") {
        RoiMask m(6, 6);
        // component A: 5 pixels (row 0)
        for (int x = 0; x < 5; ++x) m.set(x, 0, true);
        // component B: 3 pixels (row 4, separated)
        for (int x = 0; x < 3; ++x) m.set(x, 4, true);
        const auto sizes = component_sizes_oracle(m);
        REQUIRE(sizes.size() == 2);  // oracle agrees the fixture is two components
        const RoiMask out = largest_component(m);
        CHECK(out.count() == 5);
        for (int x = 0; x < 5; ++x) CHECK(out.get(x, 0));
        CHECK_FALSE(out.get(0, 4));
    }
    SUBCASE("full mask is one component and unchanged") {
        const RoiMask m(4, 4, true);
        CHECK(largest_component(m) == m);
    }
    SUBCASE("diagonal pixels connect under 8-connectivity") {
        RoiMask m(3, 3);
        m.set(0, 0, true);
        m.set(1, 1, true);
        m.set(2, 2, true);
        CHECK(largest_component(m).count() == 3);
    }
    SUBCASE("size ties keep the smallest row-major index") {
        RoiMask m(5, 3);
        m.set(3, 0, true);  // index 3: first in row-major order
        m.set(0, 2, true);  // index 10
        const RoiMask out = largest_component(m);
        CHECK(out.count() == 1);
        CHECK(out.get(3, 0));
    }
}

TEST_CASE("largest_component properties on random masks") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const RoiMask m = random_mask(rng, 12, 9, 35);
        const RoiMask out = largest_component(m);
        // subset of the input
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 12; ++x)
                if (out.get(x, y)) CHECK(m.get(x, y));
        // exactly one component (or empty), and its size matches the oracle max
        const auto out_sizes = component_sizes_oracle(out);
        const auto in_sizes = component_sizes_oracle(m);
        if (m.empty_mask()) {
            CHECK(out.empty_mask());
        } else {
            REQUIRE(out_sizes.size() == 1);
            CHECK(out_sizes[0] == *std::max_element(in_sizes.begin(), in_sizes.end()));
        }
        // idempotence
        CHECK(largest_component(out) == out);
    }
}

TEST_CASE("segment composes threshold and largest component") {
    CHECK(segment(uniform_map(5, 5, 230), 0.5).count() == 25);
    CHECK(segment(uniform_map(5, 5, 25), 0.5).empty_mask());

    // two thresholded components, 10 and 2 pixels
    std::vector<std::uint8_t> vals(8 * 8, 0);
    for (int x = 0; x < 5; ++x) {
        vals[0 * 8 + x] = 250;  // row 0
        vals[1 * 8 + x] = 250;  // row 1 -> 10-pixel component
    }
    vals[6 * 8 + 6] = 250;
    vals[6 * 8 + 7] = 250;  // 2-pixel component
    const ProbabilityMap m(8, 8, vals);
    const RoiMask out = segment(m, 0.5);
    CHECK(out.count() == 10);
    CHECK(out.get(0, 0));
    CHECK_FALSE(out.get(6, 6));
}
