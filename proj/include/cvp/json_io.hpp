#pragma once
#include <string>

#include "cvp/domain.hpp"
#include "cvp/representation.hpp"

namespace cvp {

// 17-significant-digit decimal form, enough to round-trip any double.
std::string format_double(double v);

// Representation <-> JSON {gens, images, relators, splitting}; matrices are
// row-major arrays of 9 decimals, words arrays of signed 1-based indices.
std::string representation_to_json(const Representation& rep);
Representation representation_from_json(const std::string& text);

// ConvexDomain <-> JSON {"chart": [9 reals], "vertices": [[x,y], ...]}.
std::string domain_to_json(const ConvexDomain& dom);
ConvexDomain domain_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64 content hash, hex encoded; used by the run manifest.
std::string content_hash(const std::string& data);

}  // namespace cvp
