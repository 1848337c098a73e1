#pragma once

#include <iosfwd>
#include <string>

#include "biortho/spectral.hpp"

namespace biortho {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

// JSON document: layout descriptor, epsilon, helicity, time_label,
// units "natural", and the samples as base64 of little-endian interleaved
// (re, im) float64 in layout order (row-major, kz fastest for grids).
std::string spectral_field_to_json(const SpectralField& f);
SpectralField spectral_field_from_json(const std::string& text);

// CSV k,re,im along one grid axis through k = 0, in increasing k.
void write_spectral_slice_csv(std::ostream& os, const SpectralField& f, int axis);

}  // namespace biortho
