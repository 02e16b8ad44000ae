// Copyright 2026 The lfdteach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Simulation sweeps over demonstration quality and the statistical
// analysis of teaching-study records.

#ifndef LFDTEACH_EXPERIMENTS_H_
#define LFDTEACH_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lfdteach/dynamics.h"
#include "lfdteach/skills.h"
#include "lfdteach/statistics.h"
#include "lfdteach/types.h"

namespace lfdteach {

// Values written to result files are capped here so they stay finite.
inline constexpr double kLoggedValueCap = 1e12;
double CapForLogging(double value);

// ---------------------------------------------------------------------------
// Sweeps

// k pi/36 for k = 1..18.
std::vector<double> DefaultOmegaGrid();

struct SweepConfig {
  SkillId skill = SkillId::kS1;
  std::vector<double> omegas = DefaultOmegaGrid();
  std::vector<double> sigmas{0.05, 0.1, 0.15};
  std::size_t trials = 1000;
  double lambda = 1e-6;
  std::uint64_t seed = 0;
  double duration = 3.0;
  State x0{kPi / 2, 0.0};
  PendulumParams pendulum;
  unsigned threads = 0;  // 0: hardware concurrency

  // Throws DomainError on an invalid configuration.
  void Validate() const;
};

struct SweepRow {
  SkillId skill = SkillId::kS1;
  double omega = 0.0;
  double sigma = 0.0;
  std::size_t trials = 0;
  double rmse_mean = 0.0;
  double rmse_sd = 0.0;
  double l2_mean = 0.0;
  double l2_sd = 0.0;
  std::size_t diverged = 0;  // trials whose learnt rollout blew up
};

// For every (sigma, omega) cell: `trials` rounds of canonical demo pair ->
// ridge fit -> evaluation against the target rollout. Trial t of a cell
// draws from Rng(seed).Split(bits(sigma)).Split(t), so all omegas of a
// sigma share noise draws and the result does not depend on threading.
// Rows are ordered by (sigma, omega).
std::vector<SweepRow> RunSweep(const SweepConfig& cfg);

// Header `skill,omega,sigma,trials,rmse_mean,rmse_sd,l2_mean,l2_sd`, values
// with 9 significant digits, capped via CapForLogging.
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// Study analysis

enum class Group { kTarget, kControl };
std::string_view GroupName(Group g);  // "target" / "control"
std::optional<Group> ParseGroup(std::string_view text);

inline constexpr int kPhaseCount = 6;

struct PhaseMetrics {
  int phase = 0;          // 1..6
  double det_phi = 0.0;   // signed determinant of the committed Phi
  double score = 0.0;
  double rmse = 0.0;      // capped via CapForLogging
  double l2 = 0.0;
};

struct StudyRecord {
  std::string participant;
  Group group = Group::kTarget;
  std::vector<PhaseMetrics> phases;  // in phase order

  bool complete() const {
    return phases.size() == static_cast<std::size_t>(kPhaseCount);
  }
};

enum class StudyMetric { kDetPhi, kRmse };
std::string_view MetricName(StudyMetric m);

// Value compared in the study: |det Phi| or the rmse.
double MetricValue(const PhaseMetrics& pm, StudyMetric metric);

// value(phase_b) - value(phase_a) for each record. Throws DomainError if a
// record lacks either phase.
std::vector<double> PhaseDelta(const std::vector<StudyRecord>& records,
                               int phase_a, int phase_b, StudyMetric metric);

struct GroupSummary {
  std::size_t raw_n = 0;
  std::size_t removed = 0;  // outliers dropped before the statistics
  GroupStats stats;
};

struct Comparison {
  int phase_a = 0;
  int phase_b = 0;
  StudyMetric metric = StudyMetric::kDetPhi;
  GroupSummary target;
  GroupSummary control;
  TTestResult test;  // target vs control
};

struct StudyReport {
  std::size_t target_records = 0;
  std::size_t control_records = 0;
  std::vector<Comparison> comparisons;
};

// Phase pairs compared: guidance (P1, P3), retention (P1, P5) and
// transfer (P2, P6).
inline constexpr std::pair<int, int> kComparedPhases[] = {
    {1, 3}, {1, 5}, {2, 6}};

// Uses complete records only. For each phase pair and metric: per-group
// deltas, one outlier pass, group statistics and a pooled t-test. Throws
// InsufficientDataError when a group has fewer than two values.
StudyReport AnalyzeStudy(const std::vector<StudyRecord>& records);

nlohmann::json ToJson(const StudyReport& report);

}  // namespace lfdteach

#endif  // LFDTEACH_EXPERIMENTS_H_
