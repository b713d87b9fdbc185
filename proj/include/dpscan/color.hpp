#pragma once

#include "dpscan/model.hpp"

namespace dpscan {

// Euclidean distance in RGB space; 0..441.67.
double contrast(Rgb a, Rgb b);

// Dominant-color extraction over a 32-levels-per-channel histogram:
// background = histogram mode (represented by the bucket's mean RGB),
// foreground = among remaining buckets covering at least `min_fraction` of
// the pixels, the one farthest from the background. With no qualifying
// bucket the foreground equals the background. Throws on an empty crop.
ColorPair extract_colors(const ImageU8& crop, double min_fraction = 0.02);

// Fills the colors property for every element with a non-empty crop.
void extract_element_colors(Screen& screen);

}  // namespace dpscan
