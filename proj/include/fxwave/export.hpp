#pragma once

#include <ostream>

#include "fxwave/chaosdetect.hpp"
#include "fxwave/scalestats.hpp"
#include "fxwave/spectral.hpp"
#include "fxwave/timeseries.hpp"
#include "fxwave/wavelet.hpp"

namespace fxwave {

// All writers emit shortest round-trip decimals, so output is a pure
// function of the data.

void write_prices_csv(std::ostream& out, const PriceSeries& prices, std::string_view header = "VALUE");
void write_periodogram_csv(std::ostream& out, const Periodogram& p);             // frequency,power
void write_scalogram_csv(std::ostream& out, const Scalogram& s);                 // scale \ time matrix of W
void write_mask_csv(std::ostream& out, const Scalogram& s);                      // same layout, 0/1
void write_kurtosis_csv(std::ostream& out, const KurtosisCurve& curve);          // scale,kurtosis,n
void write_pdf_csv(std::ostream& out, const ScalePdf& pdf);                      // bin_left,bin_right,density
void write_chains_csv(std::ostream& out, std::span<const RidgeChain> chains, const ScaleGrid& grid);
                                                                                 // chain_id,scale,time,power

// Heatmap of |W|^2: scale on the y axis increasing downward, time on the x
// axis, linear colour map, cone-of-influence cells hatched. Columns are
// averaged into at most `max_columns` bins.
void write_scalogram_svg(std::ostream& out, const Scalogram& s, std::size_t max_columns = 800);

}  // namespace fxwave
