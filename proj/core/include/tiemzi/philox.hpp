#pragma once

// Counter-based random number generation for the Monte Carlo experiments.
//
// Generator identity: Philox4x32-10 (four 32-bit output words per block, ten
// rounds, 64-bit key).  The generator is a pure function of (counter, key),
// has period 2^128 per key, and needs no carried state, so any partition of
// the work across threads -- by atom, by repetition, or both -- produces
// bit-identical results.
//
// Stream derivation scheme (fixed contract):
//   key     = run seed, split into two 32-bit words (lo, hi)
//   counter = { index lo32, index hi32, repetition, stream tag }
// where `index` is the per-repetition draw index (the atom index for atom
// streams, the trial index for per-trial streams), `repetition` is the
// repetition or trial ordinal, and `stream tag` names the purpose of the
// draw.  One block yields two doubles uniform on [0, 1).

#include <array>
#include <cstdint>
#include <utility>

namespace tiemzi {

struct Philox4x32 {
  // Weyl key increments and round multipliers of the Philox4x32 family.
  static constexpr std::uint32_t weyl_a = 0x9E3779B9u;
  static constexpr std::uint32_t weyl_b = 0xBB67AE85u;
  static constexpr std::uint32_t mult_a = 0xD2511F53u;
  static constexpr std::uint32_t mult_b = 0xCD9E8D57u;

  static constexpr std::array<std::uint32_t, 4> block(
      std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        key[0] += weyl_a;
        key[1] += weyl_b;
      }
      const std::uint64_t prod_a = static_cast<std::uint64_t>(mult_a) * ctr[0];
      const std::uint64_t prod_b = static_cast<std::uint64_t>(mult_b) * ctr[2];
      ctr = {static_cast<std::uint32_t>(prod_b >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(prod_b),
             static_cast<std::uint32_t>(prod_a >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(prod_a)};
    }
    return ctr;
  }
};

// Purpose tags keeping logically distinct draw streams disjoint.
namespace rng_stream {
inline constexpr std::uint32_t phase_atoms = 0;   // per-atom draws, phase runs
inline constexpr std::uint32_t game_action = 1;   // per-trial chooser action
inline constexpr std::uint32_t game_block = 2;    // per-trial blocked-path outcome
inline constexpr std::uint32_t game_atoms = 3;    // per-atom draws, shift trials
inline constexpr std::uint32_t audit_standard = 4;
inline constexpr std::uint32_t audit_tie = 5;
}  // namespace rng_stream

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)} {}

  // Two independent uniforms on [0, 1) for draw `index` of `repetition`
  // within the given stream.  53-bit mantissas, so values are in [0, 1).
  std::pair<double, double> uniforms(std::uint64_t index,
                                     std::uint32_t repetition,
                                     std::uint32_t stream) const {
    const auto words = Philox4x32::block(
        {static_cast<std::uint32_t>(index),
         static_cast<std::uint32_t>(index >> 32), repetition, stream},
        key_);
    return {to_unit(words[0], words[1]), to_unit(words[2], words[3])};
  }

 private:
  static double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  std::array<std::uint32_t, 2> key_;
};

}  // namespace tiemzi
