#pragma once

#include <string>
#include <vector>

#include "erglab/dynamics.hpp"

namespace erglab {

// On-disk form of a system: weights as "p/q" strings, transformations as
// 0-based index arrays, points as a count or a list of labels.
struct SystemDocument {
    int points = 0;
    std::vector<std::string> labels; // empty when points was a plain count
    std::vector<Rat> weights;
    std::vector<int> t1, t2;
    std::string name;
};

SystemDocument parse_system_document(const std::string& text);
SystemDocument read_system_file(const std::string& path);
CommutingSystem system_from_document(const SystemDocument& doc);
SystemDocument document_from_system(const CommutingSystem& sys,
                                    const std::vector<std::string>& labels = {});
// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string emit_system_document(const SystemDocument& doc);

// Accepted forms: "const:p/q", "indicator:i,j,...", or a comma-separated
// list of rationals covering every point.
Observable parse_observable_literal(const std::string& text, int points);

} // namespace erglab
