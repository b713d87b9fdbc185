#pragma once

#include <string>

#include "dpscan/image.hpp"

namespace dpscan {

// Loads a PNG or JPEG file (dispatch on magic bytes) as 8-bit RGB.
// Throws InputError if the file is missing, SchemaError if it cannot be decoded.
ImageU8 load_image(const std::string& path);

void save_png(const ImageU8& img, const std::string& path);

}  // namespace dpscan
