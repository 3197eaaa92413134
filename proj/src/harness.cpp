#include "elab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <tuple>

#include "elab/error.hpp"

namespace elab::harness {

namespace {

const double kPiCubed = std::pow(std::numbers::pi, 3);

bool violation_less(const Violation& a, const Violation& b) {
  return std::tie(a.seed, a.quantity, a.value, a.bound) <
         std::tie(b.seed, b.quantity, b.value, b.bound);
}

// Relative excess of value over bound; negative means below.
void check_lower(SampleRecord& r, const std::string& quantity, double value, double bound) {
  const double rel = (value - bound) / std::abs(bound);
  if (rel < -kSlack) {
    r.violations.push_back({r.seed, quantity, value, bound});
  } else if (rel < 0.0) {
    r.grazing.push_back({r.seed, quantity, value, bound});
  }
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "fourier") return Family::fourier;
  if (name == "ellipse") return Family::ellipse;
  if (name == "dumbbell") return Family::dumbbell;
  throw DomainError("unknown family '" + std::string(name) + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::fourier: return "fourier";
    case Family::ellipse: return "ellipse";
    case Family::dumbbell: return "dumbbell";
  }
  return "unknown";
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_sample(SampleRecord& r) {
  const curve::ShapeMetrics& m = r.metrics;
  check_lower(r, "EEA", m.EEA, kPiCubed);
  // L <= 2 R^2 E, written as a lower bound on 2 R^2 E.
  check_lower(r, "length_bound", 2.0 * m.circumradius * m.circumradius * m.E, m.Lperim);
  if (r.convex) {
    check_lower(r, "gage_ratio", m.gage_ratio, std::numbers::pi / 2.0);
  }
}

SampleRecord evaluate_sample(Family family, std::uint64_t seed, std::uint64_t index,
                             int n_samples, const SweepOptions& opts) {
  SampleRecord r;
  r.index = index;
  r.seed = sample_seed(seed, index);
  std::mt19937_64 rng(r.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);

  curve::PlanarCurve shape;
  switch (family) {
    case Family::fourier: {
      const int modes = 2 + static_cast<int>(rng() % 7);
      r.parameter = u * 0.9 / (2.0 * (modes - 1));
      try {
        shape = curve::fourier_shape(r.seed, modes, r.parameter);
      } catch (const RejectionError& e) {
        throw RejectionError("sample seed " + std::to_string(r.seed) + ": " + e.what());
      }
      break;
    }
    case Family::ellipse:
      r.parameter = opts.ellipse_aspect.value_or(1.0 + 3.0 * u);
      shape = curve::ellipse(r.parameter, 1.0);
      break;
    case Family::dumbbell:
      // Stratified neck lengths in [5, 40] so every sweep reaches long necks.
      r.parameter = 5.0 + 35.0 * (static_cast<double>(index) + u) / n_samples;
      shape = curve::dumbbell(r.parameter);
      break;
  }
  r.metrics = curve::metrics(shape);
  r.convex = curve::is_convex(shape, kConvexThreshold);
  check_sample(r);
  return r;
}

Report merge(Family family, std::uint64_t seed, std::vector<SampleRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const SampleRecord& a, const SampleRecord& b) { return a.index < b.index; });
  Report rep;
  rep.family = family_name(family);
  rep.seed = seed;
  rep.n_samples = static_cast<int>(records.size());
  rep.min_EEA = INFINITY;
  rep.min_gage_ratio = INFINITY;
  for (const SampleRecord& r : records) {
    const auto better = [](double v, std::uint64_t s, double best, std::uint64_t best_seed) {
      return v < best || (v == best && s < best_seed);
    };
    if (better(r.metrics.EEA, r.seed, rep.min_EEA, rep.min_EEA_seed)) {
      rep.min_EEA = r.metrics.EEA;
      rep.min_EEA_seed = r.seed;
    }
    if (better(r.metrics.gage_ratio, r.seed, rep.min_gage_ratio, rep.min_gage_ratio_seed)) {
      rep.min_gage_ratio = r.metrics.gage_ratio;
      rep.min_gage_ratio_seed = r.seed;
    }
    rep.convex_samples += r.convex ? 1 : 0;
    rep.violations.insert(rep.violations.end(), r.violations.begin(), r.violations.end());
    rep.grazing.insert(rep.grazing.end(), r.grazing.begin(), r.grazing.end());
  }
  std::sort(rep.violations.begin(), rep.violations.end(), violation_less);
  std::sort(rep.grazing.begin(), rep.grazing.end(), violation_less);
  return rep;
}

Report verify_family(Family family, int n_samples, std::uint64_t seed,
                     const SweepOptions& opts) {
  if (n_samples < 1) {
    throw ContractViolation("verify_family: n_samples must be at least 1");
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<SampleRecord> records(n_samples);
  std::vector<std::exception_ptr> errors(n_samples);
  if (opts.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_samples; ++i) {
      try {
        records[i] = evaluate_sample(family, seed, i, n_samples, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n_samples; ++i) {
      try {
        records[i] = evaluate_sample(family, seed, i, n_samples, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  // Lowest failing index wins so the reported error does not depend on scheduling.
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Report rep = merge(family, seed, std::move(records));
  rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

nlohmann::ordered_json violations_json(const std::vector<Violation>& list) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Violation& v : list) {
    out.push_back({{"seed", v.seed}, {"quantity", v.quantity}, {"value", v.value}, {"bound", v.bound}});
  }
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const Report& rep, bool with_runtime) {
  nlohmann::ordered_json j;
  j["family"] = rep.family;
  j["n_samples"] = rep.n_samples;
  j["seed"] = rep.seed;
  j["min_EEA"] = rep.min_EEA;
  j["min_EEA_seed"] = rep.min_EEA_seed;
  j["violations"] = violations_json(rep.violations);
  j["grazing"] = violations_json(rep.grazing);
  j["annotations"] = {{"min_gage_ratio", rep.min_gage_ratio},
                      {"min_gage_ratio_seed", rep.min_gage_ratio_seed},
                      {"convex_samples", rep.convex_samples},
                      {"gage_below_half_pi", rep.min_gage_ratio < std::numbers::pi / 2.0}};
  if (with_runtime) {
    j["runtime"] = rep.runtime;
  }
  return j;
}

Counterexample parse_counterexample(std::string_view name) {
  if (name == "ring") return Counterexample::ring;
  if (name == "gaussian") return Counterexample::gaussian;
  if (name == "dumbbell") return Counterexample::dumbbell;
  throw DomainError("unknown counterexample '" + std::string(name) + "'");
}

std::vector<SweepRow> counterexample_sweep(Counterexample kind, const std::vector<double>& params) {
  std::vector<SweepRow> rows;
  rows.reserve(params.size());
  for (double p : params) {
    if (!(p > 0.0)) {
      throw DomainError("counterexample_sweep: parameters must be positive");
    }
    SweepRow row;
    row.param = p;
    switch (kind) {
      case Counterexample::ring: {
        const curve::EnergyArea ea = curve::ring_metrics(p);
        row.E = ea.E;
        row.A = ea.A;
        break;
      }
      case Counterexample::gaussian: {
        const curve::EnergyArea ea = curve::gaussian_metrics(p);
        row.E = ea.E;
        row.A = ea.A;
        break;
      }
      case Counterexample::dumbbell: {
        const curve::ShapeMetrics m = curve::metrics(curve::dumbbell(p));
        row.E = m.E;
        row.A = m.A;
        row.L = m.Lperim;
        row.gage_ratio = m.gage_ratio;
        break;
      }
    }
    row.EEA = row.E * row.E * row.A;
    rows.push_back(row);
  }
  return rows;
}

bool eea_strictly_decreasing(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].EEA < rows[i - 1].EEA)) return false;
  }
  return true;
}

}  // namespace elab::harness
