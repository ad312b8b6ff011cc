#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace fxwave {

enum class Window { None, Hann };

std::string_view to_string(Window w);
Window parse_window(std::string_view text);

// One-sided periodogram; frequencies in cycles/sample on [0, 0.5].
struct Periodogram {
  std::vector<double> frequencies;
  std::vector<double> power;
  Window window = Window::None;
  std::size_t signal_length = 0;
};

// power[k] = |DFT(w * (x - mean))[k]|^2 / L for k = 0 .. floor(L/2).
Periodogram periodogram(std::span<const double> x, Window window = Window::None);

// Sum of the one-sided power folded back to the full spectrum; by Parseval it
// equals the energy sum_t (w x)^2 of the windowed, mean-removed input.
double folded_power(const Periodogram& p);

// Geometric over arithmetic mean of the positive-frequency bins (DC excluded).
// A zero bin makes the geometric mean zero.
double spectral_flatness(const Periodogram& p);

}  // namespace fxwave
