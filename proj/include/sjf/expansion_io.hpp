#pragma once

#include <string>

#include "sjf/fourier.hpp"

namespace sjf {

// ExpansionFileV1: canonical JSON with sorted keys and LF line endings;
// write(read(x)) is byte-identical.
std::string expansion_to_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const std::string& text);

void write_expansion_file(const std::string& path, const FourierExpansion& f);
FourierExpansion read_expansion_file(const std::string& path);

}  // namespace sjf
