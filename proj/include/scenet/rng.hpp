#pragma once

#include <cstdint>
#include <random>

namespace scenet {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates sequential stream ids.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent per-stream seed from a master seed. Stream ids are
// stable (node index, purpose tag), so runs replay exactly.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream_id) {
  return mix64(master ^ mix64(stream_id));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t stream_id) {
  return Rng(substream_seed(master, stream_id));
}

}  // namespace scenet
