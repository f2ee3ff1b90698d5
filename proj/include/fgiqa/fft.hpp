#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace fgiqa::fft {

// In-place unnormalised 2-D DFT over a row-major height x width buffer.
// Safe to call concurrently; plans are created once per shape.
void forward(std::size_t width, std::size_t height, std::span<std::complex<double>> data);
void inverse(std::size_t width, std::size_t height, std::span<std::complex<double>> data);

}  // namespace fgiqa::fft
