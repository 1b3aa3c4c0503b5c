#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fadingnet/distributions.hpp"
#include "fadingnet/rng.hpp"

namespace fadingnet {

// One time slot of the network. Direct gains are drawn eagerly; the
// n(n-1) cross gains are a counter-keyed pure function of (cross_salt, k, i)
// and materialize lazily, so a slot with A active pairs touches only
// n + A(A-1) gain values.
struct SlotRealization {
  ChannelModel model;
  std::size_t n = 0;
  std::vector<double> direct_gains;
  std::uint64_t cross_salt = 0;
  mutable std::unordered_map<std::uint64_t, double> cross_cache;

  // gamma_{k,i} without touching the cache; same value cross_gain() returns.
  double cross_value(std::uint32_t k, std::uint32_t i) const {
    return quantile(model, unit_hash01(cross_salt, k, i));
  }
};

// Intended top-m set, post-feedback active set, and the two error counts.
struct ActivationState {
  std::vector<std::uint32_t> intended;  // ascending
  std::vector<std::uint32_t> noisy;     // ascending
  std::size_t e1 = 0;                   // intended \ noisy
  std::size_t e2 = 0;                   // noisy \ intended
  std::size_t m = 0;                    // |intended|
};

struct SlotOutcome {
  // (active pair index, SINR), ascending by index
  std::vector<std::pair<std::uint32_t, double>> sinr;
  std::size_t successes = 0;
  bool all_intended_success = true;  // vacuous when intended ∩ noisy empty
  double max_active_interference = 0.0;
};

SlotRealization draw_direct_gains(const ChannelModel& model, std::size_t n,
                                  Rng& stream);

// Indices of the m largest entries of gains, ascending. Ties break toward
// the smaller index. Partial selection, O(n) expected.
std::vector<std::uint32_t> select_strongest(const std::vector<double>& gains,
                                            std::size_t m);
std::vector<std::uint32_t> select_strongest(const SlotRealization& realization,
                                            std::size_t m);

// Each of the n one-bit feedbacks flips independently with probability zeta.
ActivationState apply_feedback_noise(const std::vector<std::uint32_t>& intended,
                                     std::size_t n, double zeta, Rng& stream);

// Memoized gamma_{k,i}, k != i. Repeated queries return the identical value.
double cross_gain(const SlotRealization& realization, std::uint32_t k,
                  std::uint32_t i);

// SINR_i = gamma_{i,i} / (n0 + sum_{k active, k != i} gamma_{k,i}) for every
// active i. A receiver counts as a success when its source is active and
// SINR >= beta; with count_unexpected off, mistakenly activated pairs
// (second-kind errors) are excluded from the count.
SlotOutcome evaluate_slot(const SlotRealization& realization,
                          const ActivationState& activation, double beta,
                          double n0, bool count_unexpected = true);

// Fresh slot: draw, select, corrupt, evaluate.
SlotOutcome run_slot(const ChannelModel& model, std::size_t n, std::size_t m,
                     double zeta, double beta, double n0, Rng& stream,
                     bool count_unexpected = true);

}  // namespace fadingnet
