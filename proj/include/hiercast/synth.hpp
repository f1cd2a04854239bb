#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hiercast/ingest.hpp"

namespace hiercast {

// Knobs for the two construction archetypes. Trend-dominant series draw a
// slope from [slope_min, slope_max] and a small weekly amplitude; seasonal
// ones draw an amplitude from [amp_min, amp_max] and a near-zero slope.
struct SynthSpec {
  int n_items = 10;
  int n_stores = 2;
  int n_states = 2;
  int n_categories = 2;
  int n_departments = 2;
  int days = 120;
  double trend_fraction = 0.5;  // share of series built trend-dominant
  double base_min = 2.0;
  double base_max = 8.0;
  double slope_min = 0.01;
  double slope_max = 0.05;
  double trend_amp_max = 0.2;
  double amp_min = 1.0;
  double amp_max = 3.0;
  double seasonal_slope_max = 0.002;
  double holiday_spike = 0.0;
  int holiday_every = 0;  // a labelled event day every k days; 0 disables
  double zero_inflation = 0.0;
  double noise = 0.3;
  bool with_prices = false;
  std::uint64_t seed = 1;
};

// Per-series construction record, the ground truth for label-recovery tests.
struct SeriesArchetype {
  bool trend_dominant = false;
  double base = 0.0;
  double slope = 0.0;
  double amplitude = 0.0;
  double spike = 0.0;
};

struct SynthResult {
  SalesPanel panel;  // calendar and prices attached
  std::vector<SeriesArchetype> archetypes;
};

// sales(t) = round(max(0, base + slope*t + amp*sin(2*pi*t/7) + spike on event
// days + noise)) masked to zero with probability zero_inflation. Each series
// draws from its own seed substream, so generation order never changes the
// data.
SynthResult generate(const SynthSpec& spec);

// Writes sales.csv, calendar.csv, archetypes.csv and, when prices exist,
// prices.csv under `dir` in the formats the ingest module reads back.
void write_synth(const SynthResult& result, const std::string& dir);

}  // namespace hiercast
