#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "holo/mraf.hpp"
#include "support/reference.hpp"
#include "support/testutil.hpp"

using namespace holo;

TEST_CASE("mask construction") {
  const RegionMask m = make_mask(512, 512, 200, 200, {256, 256});
  CHECK(m.count_true() == 40000);
  CHECK(m.at(256, 256));
  CHECK(m.at(156, 156));
  CHECK_FALSE(m.at(155, 156));
  CHECK(m.at(355, 355));
  CHECK_FALSE(m.at(356, 355));

  const RegionMask full = make_mask(16, 16, 16, 16, {8, 8});
  CHECK(full.count_true() == 256);

  const RegionMask one = make_mask(64, 64, 1, 1, {32, 32});
  CHECK(one.count_true() == 1);
  CHECK(one.at(32, 32));

  CHECK_THROWS_AS(make_mask(64, 64, 65, 10, {32, 32}), bounds_error);
  CHECK_THROWS_AS(make_mask(64, 64, 10, 10, {2, 32}), bounds_error);
  CHECK_THROWS_AS(make_mask(64, 64, 0, 10, {32, 32}), config_error);
}

TEST_CASE("mask covers layouts") {
  const RegionMask m = make_mask(64, 64, 20, 20, {32, 32});
  CHECK(m.covers(centered_grid(3, 3, 5, 64, 64)));
  CHECK_FALSE(m.covers(TrapLayout{1, 1, 5, {2, 2}}));
}

TEST_CASE("mix step arithmetic") {
  SECTION("single pixel, direct numbers") {
    ComplexField cur(1, 1, Plane::Image);
    cur.at(0, 0) = std::polar(0.9, std::numbers::pi / 3.0);
    const std::vector<double> target_amp{2.0};
    const RegionMask mask{1, 1, {1}};
    const ComplexField out = mix_step(cur, target_amp, mask, 0.49);
    CHECK(std::abs(out.at(0, 0)) == Catch::Approx(1.4).epsilon(1e-14));
    CHECK(std::arg(out.at(0, 0)) == Catch::Approx(std::numbers::pi / 3.0).epsilon(1e-14));
  }
  SECTION("p=1 with a full mask replaces amplitudes and keeps phases") {
    const ComplexField cur = testutil::random_field(16, 12, Plane::Image, 3);
    std::vector<double> target_amp(cur.size(), 0.25);
    const RegionMask mask{16, 12, std::vector<std::uint8_t>(cur.size(), 1)};
    const ComplexField out = mix_step(cur, target_amp, mask, 1.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      CHECK(std::abs(out.values()[i]) == Catch::Approx(0.25).epsilon(1e-14));
      CHECK(std::abs(std::remainder(std::arg(out.values()[i]) - std::arg(cur.values()[i]),
                                    2.0 * std::numbers::pi)) < 1e-12);
    }
  }
  SECTION("p=0 with an all-false mask returns the field bit-identically") {
    const ComplexField cur = testutil::random_field(16, 12, Plane::Image, 4);
    const std::vector<double> target_amp(cur.size(), 0.25);
    const RegionMask mask{16, 12, std::vector<std::uint8_t>(cur.size(), 0)};
    const ComplexField out = mix_step(cur, target_amp, mask, 0.0);
    CHECK(testutil::bit_equal(out, cur));
  }
  SECTION("phase preserved at every pixel with nonzero amplitude") {
    const ComplexField cur = testutil::random_field(24, 24, Plane::Image, 5);
    std::vector<double> target_amp(cur.size(), 1.0);
    RegionMask mask{24, 24, std::vector<std::uint8_t>(cur.size(), 0)};
    for (std::size_t i = 0; i < mask.inside.size(); i += 3) mask.inside[i] = 1;
    const ComplexField out = mix_step(cur, target_amp, mask, 0.7);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (std::abs(out.values()[i]) == 0.0) continue;
      CHECK(std::abs(std::remainder(std::arg(out.values()[i]) - std::arg(cur.values()[i]),
                                    2.0 * std::numbers::pi)) < 1e-12);
    }
  }
  SECTION("shape mismatches are rejected") {
    const ComplexField cur(8, 8, Plane::Image);
    const std::vector<double> amp(64, 1.0);
    const RegionMask wrong{8, 7, std::vector<std::uint8_t>(56, 1)};
    CHECK_THROWS_AS(mix_step(cur, amp, wrong, 0.5), shape_error);
  }
}

namespace {

struct CaptureObserver {
  std::vector<ComplexField>* mixed;
  std::vector<DisplayedHologram>* displayed;
  void operator()(int, const DisplayedHologram& d, const ComplexField&, const ComplexField& m) const {
    mixed->push_back(m);
    displayed->push_back(d);
  }
};

} // namespace

TEST_CASE("p=1 full-mask loop reproduces Gerchberg-Saxton bit for bit") {
  const int n = 64;
  const TrapLayout layout = centered_grid(2, 2, 5, n, n);
  const ComplexField target = build_target(layout, n, n, RngSeed{2024});

  for (DeviceModel device : {DeviceModel::pslm(256), DeviceModel::dmd()}) {
    MrafConfig cfg{1.0, 6, make_mask(n, n, n, n, {n / 2, n / 2}), device, RngSeed{2024}};
    std::vector<ComplexField> mixed;
    std::vector<DisplayedHologram> displayed;
    const auto [final_display, trace] =
        mraf_run(target, layout, cfg, CaptureObserver{&mixed, &displayed});

    const reference::GsCapture gs = reference::gerchberg_saxton(target, device, 6);
    REQUIRE(mixed.size() == 6);
    for (int it = 0; it < 6; ++it) CHECK(testutil::bit_equal(mixed[it], gs.mixed[it]));
    CHECK(final_display.values == gs.displayed.values);
    CHECK(trace.cv.size() == 6);
  }
}

TEST_CASE("every intermediate hologram satisfies the device constraint") {
  const int n = 64;
  const TrapLayout layout = centered_grid(3, 3, 5, n, n);
  const ComplexField target = build_target(layout, n, n, RngSeed{7});

  SECTION("PSLM levels stay in range") {
    MrafConfig cfg{0.7, 5, make_mask(n, n, 32, 32, layout.centroid()), DeviceModel::pslm(16),
                   RngSeed{7}};
    std::vector<ComplexField> mixed;
    std::vector<DisplayedHologram> displayed;
    mraf_run(target, layout, cfg, CaptureObserver{&mixed, &displayed});
    REQUIRE(displayed.size() == 5);
    for (const DisplayedHologram& d : displayed) {
      CHECK(d.device.kind == DeviceKind::PSLM);
      for (std::uint16_t v : d.values) CHECK(v < 16);
    }
  }
  SECTION("DMD states are binary") {
    MrafConfig cfg{0.7, 5, make_mask(n, n, 32, 32, layout.centroid()), DeviceModel::dmd(),
                   RngSeed{7}};
    std::vector<ComplexField> mixed;
    std::vector<DisplayedHologram> displayed;
    mraf_run(target, layout, cfg, CaptureObserver{&mixed, &displayed});
    for (const DisplayedHologram& d : displayed)
      for (std::uint16_t v : d.values) CHECK(v <= 1);
  }
}

TEST_CASE("loop validation and trace shape") {
  const int n = 32;
  const TrapLayout layout = centered_grid(2, 2, 5, n, n);
  const ComplexField target = build_target(layout, n, n, RngSeed{1});

  MrafConfig good{0.7, 3, make_mask(n, n, 16, 16, layout.centroid()), DeviceModel::pslm(256),
                  RngSeed{1}};
  const auto [d, trace] = mraf_run(target, layout, good);
  CHECK(trace.cv.size() == 3);
  CHECK(trace.efficiency.size() == 3);
  for (double e : trace.efficiency) {
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
  }

  MrafConfig bad_iter = good;
  bad_iter.iterations = 0;
  CHECK_THROWS_AS(mraf_run(target, layout, bad_iter), config_error);

  MrafConfig bad_p = good;
  bad_p.mixing = 1.5;
  CHECK_THROWS_AS(mraf_run(target, layout, bad_p), config_error);

  // mask that misses the trap pixels
  MrafConfig bad_mask = good;
  bad_mask.mask = make_mask(n, n, 2, 2, {2, 2});
  CHECK_THROWS_AS(mraf_run(target, layout, bad_mask), config_error);

  // mask sized for a different array
  MrafConfig wrong_size = good;
  wrong_size.mask = make_mask(64, 64, 16, 16, {32, 32});
  CHECK_THROWS_AS(mraf_run(target, layout, wrong_size), config_error);
}

TEST_CASE("the loop is deterministic") {
  const int n = 32;
  const TrapLayout layout = centered_grid(2, 2, 5, n, n);
  const ComplexField target = build_target(layout, n, n, RngSeed{11});
  MrafConfig cfg{0.7, 4, make_mask(n, n, 16, 16, layout.centroid()), DeviceModel::pslm(256),
                 RngSeed{11}};
  const auto [d1, t1] = mraf_run(target, layout, cfg);
  const auto [d2, t2] = mraf_run(target, layout, cfg);
  CHECK(d1.values == d2.values);
  CHECK(t1.cv == t2.cv);
  CHECK(t1.efficiency == t2.efficiency);
}
