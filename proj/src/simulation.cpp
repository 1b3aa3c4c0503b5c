#include "fadingnet/simulation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fadingnet {

SlotRealization draw_direct_gains(const ChannelModel& model, std::size_t n,
                                  Rng& stream) {
  if (n == 0) throw std::domain_error("draw_direct_gains: n must be >= 1");
  SlotRealization slot{.model = model, .n = n, .direct_gains = {}, .cross_salt = 0,
                       .cross_cache = {}};
  slot.direct_gains.resize(n);
  for (std::size_t i = 0; i < n; ++i) slot.direct_gains[i] = sample(model, stream);
  slot.cross_salt = stream.next_u64();
  return slot;
}

std::vector<std::uint32_t> select_strongest(const std::vector<double>& gains,
                                            std::size_t m) {
  const std::size_t n = gains.size();
  if (m > n) throw std::domain_error("select_strongest: m must be <= n");
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  const auto stronger = [&](std::uint32_t a, std::uint32_t b) {
    return gains[a] > gains[b] || (gains[a] == gains[b] && a < b);
  };
  if (m < n) std::nth_element(idx.begin(), idx.begin() + m, idx.end(), stronger);
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<std::uint32_t> select_strongest(const SlotRealization& realization,
                                            std::size_t m) {
  return select_strongest(realization.direct_gains, m);
}

ActivationState apply_feedback_noise(const std::vector<std::uint32_t>& intended,
                                     std::size_t n, double zeta, Rng& stream) {
  if (zeta < 0.0 || zeta > 1.0)
    throw std::domain_error("apply_feedback_noise: zeta must be in [0,1]");
  ActivationState state;
  state.intended = intended;
  state.m = intended.size();
  std::size_t next = 0;  // cursor into the ascending intended set
  for (std::uint32_t i = 0; i < n; ++i) {
    const bool wanted = next < intended.size() && intended[next] == i;
    if (wanted) ++next;
    const bool flipped = stream.bernoulli(zeta);
    const bool active = wanted != flipped;
    if (active) state.noisy.push_back(i);
    if (wanted && !active) ++state.e1;
    if (!wanted && active) ++state.e2;
  }
  return state;
}

double cross_gain(const SlotRealization& realization, std::uint32_t k,
                  std::uint32_t i) {
  if (k == i) throw std::domain_error("cross_gain: k == i is a direct link");
  if (k >= realization.n || i >= realization.n)
    throw std::domain_error("cross_gain: index out of range");
  const std::uint64_t key =
      static_cast<std::uint64_t>(k) * realization.n + i;
  auto it = realization.cross_cache.find(key);
  if (it != realization.cross_cache.end()) return it->second;
  const double value = realization.cross_value(k, i);
  realization.cross_cache.emplace(key, value);
  return value;
}

namespace {

// Interference sums, one per active receiver. The per-pair uniforms are the
// same counter-keyed values cross_value() sees; the invariant hash parts are
// hoisted, and for the exponential model the per-term logs collapse to a few
// logs of running products (log a + log b = log ab, flushed well before the
// product can underflow).
std::vector<double> interference_sums(const SlotRealization& realization,
                                      const std::vector<std::uint32_t>& active) {
  const std::size_t count = active.size();
  std::vector<double> sums(count, 0.0);
  if (count < 2) return sums;

  const std::uint64_t salt_part = hash_salt_part(realization.cross_salt);
  std::vector<std::uint64_t> source_part(count);
  for (std::size_t j = 0; j < count; ++j) source_part[j] = hash_index_a(active[j]);

  const Fading variant = realization.model.variant();
  const double scale = variant == Fading::RayleighPower ? realization.model.mu() : 0.0;
  const double inv_alpha =
      variant == Fading::ParetoType ? 1.0 / realization.model.alpha() : 0.0;

  for (std::size_t ai = 0; ai < count; ++ai) {
    const std::uint64_t dest_part = hash_index_b(active[ai]);
    if (variant == Fading::RayleighPower) {
      double log_acc = 0.0;
      double prod = 1.0;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == ai) continue;
        const double u = unit_hash01_parts(salt_part, source_part[j], dest_part);
        prod *= 1.0 - u;
        if (prod < 1e-250) {
          log_acc += std::log(prod);
          prod = 1.0;
        }
      }
      sums[ai] = -scale * (log_acc + std::log(prod));
    } else {
      double acc = 0.0;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == ai) continue;
        const double u = unit_hash01_parts(salt_part, source_part[j], dest_part);
        acc += std::pow(1.0 - u, -inv_alpha) - 1.0;
      }
      sums[ai] = acc;
    }
  }
  return sums;
}

}  // namespace

SlotOutcome evaluate_slot(const SlotRealization& realization,
                          const ActivationState& activation, double beta,
                          double n0, bool count_unexpected) {
  if (!(n0 > 0.0)) throw std::domain_error("evaluate_slot: n0 must be > 0");
  if (beta < 0.0) throw std::domain_error("evaluate_slot: beta must be >= 0");

  SlotOutcome outcome;
  const auto& active = activation.noisy;
  for (const std::uint32_t i : active)
    if (i >= realization.n)
      throw std::domain_error("evaluate_slot: active index out of range");
  outcome.sinr.reserve(active.size());
  const std::vector<double> interference = interference_sums(realization, active);

  std::size_t next_intended = 0;  // cursor: both sets ascending
  for (std::size_t ai = 0; ai < active.size(); ++ai) {
    const std::uint32_t i = active[ai];
    while (next_intended < activation.intended.size() &&
           activation.intended[next_intended] < i)
      ++next_intended;
    const bool is_intended = next_intended < activation.intended.size() &&
                             activation.intended[next_intended] == i;

    outcome.max_active_interference =
        std::max(outcome.max_active_interference, interference[ai]);

    const double sinr = realization.direct_gains[i] / (n0 + interference[ai]);
    outcome.sinr.emplace_back(i, sinr);

    const bool ok = sinr >= beta;
    if (ok && (is_intended || count_unexpected)) ++outcome.successes;
    if (is_intended && !ok) outcome.all_intended_success = false;
  }
  return outcome;
}

SlotOutcome run_slot(const ChannelModel& model, std::size_t n, std::size_t m,
                     double zeta, double beta, double n0, Rng& stream,
                     bool count_unexpected) {
  const SlotRealization slot = draw_direct_gains(model, n, stream);
  const auto intended = select_strongest(slot, m);
  const ActivationState state = apply_feedback_noise(intended, n, zeta, stream);
  return evaluate_slot(slot, state, beta, n0, count_unexpected);
}

}  // namespace fadingnet
