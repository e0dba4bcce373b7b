#pragma once

#include <cstdint>

namespace specpred {

// splitmix64; used to derive independent per-item streams from one user seed
// so batch results do not depend on execution order.
inline std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	std::uint64_t z = x;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
	return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Uniform double in [0, 1) from a raw 64-bit word. Explicit conversion keeps
// generated values identical across standard library implementations.
inline double u01(std::uint64_t word) {
	return static_cast<double>(word >> 11) * 0x1.0p-53;
}

} // namespace specpred
