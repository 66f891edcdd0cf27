#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "qes/record.hpp"

using namespace qes::cli;
using qes::spectra::Branch;
using qes::spectra::SpectralPoint;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_bits(a[i], b[i])) return false;
  }
  return true;
}

// Mixes ordinary magnitudes with awkward ones: subnormals, extremes, −0.
double awkward(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  switch (pick(rng)) {
    case 0:
      return std::numeric_limits<double>::denorm_min() * static_cast<double>(rng() % 1000 + 1);
    case 1:
      return std::numeric_limits<double>::max() * u(rng);
    case 2:
      return -0.0;
    case 3:
      return std::bit_cast<double>(rng() & 0x7fefffffffffffffULL);
    default:
      return u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
  }
}

SolutionRecord random_record(std::mt19937_64& rng) {
  SolutionRecord r;
  r.context = {awkward(rng), awkward(rng), static_cast<int>(rng() % 11) - 5, static_cast<int>(rng() % 7)};
  SpectralPoint& p = r.point;
  for (double* f : {&p.x0, &p.t, &p.E, &p.lB, &p.eB, &p.b0, &p.b, &p.c, &p.x0p, &p.bp, &p.cp}) *f = awkward(rng);
  p.epsilon = r.context.n;
  p.epsilonp = r.context.n + 1;
  for (int k = 0; k <= r.context.n; ++k) p.Qcoeffs.push_back(awkward(rng));
  for (int k = 0; k <= r.context.n + 1; ++k) p.Pcoeffs.push_back(awkward(rng));
  auto& s = p.residuals;
  for (double* f : {&s.kernel_r0, &s.kernel_r1, &s.sigma_min, &s.divis_rem, &s.ode_Q, &s.ode_P, &s.dirac_max}) {
    *f = awkward(rng);
  }
  p.branch = rng() % 2 ? Branch::particle : Branch::antiparticle;
  r.provenance.scan = {awkward(rng), awkward(rng), static_cast<std::size_t>(rng() % 100000), awkward(rng),
                       awkward(rng), awkward(rng)};
  if (rng() % 2) r.provenance.timestamp = "2026-01-02T03:04:05Z";
  return r;
}

void check_equal(const SolutionRecord& a, const SolutionRecord& b) {
  CHECK(a.schema_version == b.schema_version);
  CHECK(same_bits(a.context.m, b.context.m));
  CHECK(same_bits(a.context.zalpha, b.context.zalpha));
  CHECK(a.context.l == b.context.l);
  CHECK(a.context.n == b.context.n);
  const auto& p = a.point;
  const auto& q = b.point;
  CHECK(same_bits(p.x0, q.x0));
  CHECK(same_bits(p.t, q.t));
  CHECK(same_bits(p.E, q.E));
  CHECK(same_bits(p.lB, q.lB));
  CHECK(same_bits(p.eB, q.eB));
  CHECK(same_bits(p.b0, q.b0));
  CHECK(same_bits(p.b, q.b));
  CHECK(same_bits(p.c, q.c));
  CHECK(same_bits(p.x0p, q.x0p));
  CHECK(same_bits(p.bp, q.bp));
  CHECK(same_bits(p.cp, q.cp));
  CHECK(p.epsilon == q.epsilon);
  CHECK(p.epsilonp == q.epsilonp);
  CHECK(same_bits(p.Qcoeffs, q.Qcoeffs));
  CHECK(same_bits(p.Pcoeffs, q.Pcoeffs));
  CHECK(p.branch == q.branch);
  CHECK(same_bits(p.residuals.kernel_r0, q.residuals.kernel_r0));
  CHECK(same_bits(p.residuals.kernel_r1, q.residuals.kernel_r1));
  CHECK(same_bits(p.residuals.sigma_min, q.residuals.sigma_min));
  CHECK(same_bits(p.residuals.divis_rem, q.residuals.divis_rem));
  CHECK(same_bits(p.residuals.ode_Q, q.residuals.ode_Q));
  CHECK(same_bits(p.residuals.ode_P, q.residuals.ode_P));
  CHECK(same_bits(p.residuals.dirac_max, q.residuals.dirac_max));
  CHECK(same_bits(a.provenance.scan.x0_min, b.provenance.scan.x0_min));
  CHECK(same_bits(a.provenance.scan.x0_max, b.provenance.scan.x0_max));
  CHECK(a.provenance.scan.grid_points == b.provenance.scan.grid_points);
  CHECK(same_bits(a.provenance.scan.tol_accept, b.provenance.scan.tol_accept));
  CHECK(same_bits(a.provenance.scan.tol_refine, b.provenance.scan.tol_refine));
  CHECK(same_bits(a.provenance.scan.exclusion, b.provenance.scan.exclusion));
  CHECK(a.provenance.tool_version == b.provenance.tool_version);
  CHECK(a.provenance.timestamp == b.provenance.timestamp);
}

std::string valid_text() {
  std::mt19937_64 rng(7);
  return emit_records({random_record(rng)});
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("round trip is lossless for arbitrary doubles") {
  std::mt19937_64 rng(20261019);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SolutionRecord> recs;
    const int count = static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) recs.push_back(random_record(rng));
    const std::string text = emit_records(recs);
    const std::vector<SolutionRecord> back = parse_records(text);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) check_equal(recs[i], back[i]);
    CHECK(emit_records(back) == text);
  }
}

TEST_CASE("emitted layout") {
  const std::string text = emit_records({});
  CHECK(text == "[]\n");
  const std::string one = valid_text();
  CHECK(one.find('\r') == std::string::npos);
  CHECK(one.back() == '\n');
  // Field order is part of the schema.
  CHECK(one.find("\"schema_version\"") < one.find("\"context\""));
  CHECK(one.find("\"context\"") < one.find("\"point\""));
  CHECK(one.find("\"point\"") < one.find("\"residuals\""));
  CHECK(one.find("\"residuals\"") < one.find("\"provenance\""));
  CHECK(one.find("workers") == std::string::npos);
}

TEST_CASE("schema violations are rejected") {
  const std::string good = valid_text();
  CHECK_NOTHROW(static_cast<void>(parse_records(good)));
  CHECK_THROWS_AS(static_cast<void>(parse_records("{")), RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records("{}")), RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records("[1]")), RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records(replace(good, "\"schema_version\": 1", "\"schema_version\": 2"))),
                  RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records(replace(good, "\"x0\":", "\"x0_renamed\":"))), RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records(replace(good, "\"branch\": \"", "\"branch\": \"sideways"))),
                  RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records(replace(good, "\"epsilon\": ", "\"epsilon\": 0.5, \"ignored\": "))),
                  RecordError);
  CHECK_THROWS_AS(static_cast<void>(parse_records(replace(good, "\"tool_version\": \"", "\"tool_version\": 3, \"x\": \""))),
                  RecordError);
  try {
    static_cast<void>(parse_records(replace(good, "\"dirac_max\":", "\"dirac\":")));
    FAIL("expected RecordError");
  } catch (const RecordError& e) {
    CHECK(std::string(e.what()).find("record[0].residuals.dirac_max") != std::string::npos);
  }
}
