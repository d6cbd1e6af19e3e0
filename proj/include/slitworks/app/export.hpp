#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slitworks/detector/arrivals.hpp"
#include "slitworks/detector/image.hpp"
#include "slitworks/engine/carpet.hpp"

namespace slitworks::app {

enum class ImageFormat { Csv, Pgm, Png };

ImageFormat parseImageFormat(const std::string& s);
const char* extension(ImageFormat f);

/// Header row "y\x" followed by x positions; one row per y with the intensities. %.10e throughout.
std::string imageCsv(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& values,
                     const char* corner = "y\\x");
std::string traceCsv(const Trace& trace);
std::string arrivalsCsv(const std::vector<ArrivalEvent>& events);

/// Linear scaling of [0, max] onto the grey range; bits is 8 or 16.
std::string pgm(const std::vector<double>& values, std::size_t width, std::size_t height, int bits = 16);
std::string png(const std::vector<double>& values, std::size_t width, std::size_t height, int bits = 16);

void writeFile(const std::string& path, const std::string& bytes);

/// Little-endian IEEE doubles, base64 encoded.
std::string base64Doubles(const std::vector<double>& values);

}  // namespace slitworks::app
