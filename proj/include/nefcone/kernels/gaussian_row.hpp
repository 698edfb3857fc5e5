#pragma once

// Innermost loop of the numeric theta sum: one row of a lattice box,
//   sum_{j = j_start}^{j_start + count - 1} exp(c0 + c1 j + c2 j^2) e^{2 pi i (d0 + d1 j + d2 j^2)}.
// A portable reference implementation and an AVX2 variant selected at run time.

#include <cstddef>
#include <cstdint>
#include <string>

namespace nefcone::kernels {

struct RowCoefficients {
    double c0 = 0, c1 = 0, c2 = 0; // real exponent
    double d0 = 0, d1 = 0, d2 = 0; // phase, in turns
};

struct RowSum {
    double re = 0;
    double im = 0;
    double abs_sum = 0; // sum of the moduli of the terms
};

enum class Isa { scalar, avx2 };

RowSum gaussian_row_scalar(const RowCoefficients& k, std::int64_t j_start, std::size_t count);
#if defined(NEFCONE_HAVE_AVX2)
RowSum gaussian_row_avx2(const RowCoefficients& k, std::int64_t j_start, std::size_t count);
#endif

/// Dispatches to the active implementation.
RowSum gaussian_row(const RowCoefficients& k, std::int64_t j_start, std::size_t count);

bool isa_supported(Isa isa);
Isa active_isa();
/// Throws PreconditionError if the ISA is not compiled in or not supported by the CPU.
void set_isa(Isa isa);
std::string to_string(Isa isa);

} // namespace nefcone::kernels
