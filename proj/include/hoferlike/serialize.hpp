#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "hoferlike/functionals.hpp"

namespace hoferlike {

// Shared binary containers. Doubles are written raw (host little-endian),
// so files round-trip bit exactly.
//
//   field container:  "HLF1" | u32 type | u32 n | u32 components | payload
//     type: 0 scalar (1 comp), 1 one-form (2), 2 vector (2), 3 displacement (2)
//     payload: components x n*n doubles, row-major, x fastest
//
//   path container:   "HLP1" | u32 kind | u32 n | u32 T | payload
//     kind 0 generator: per sample j=0..T: n*n doubles U, then a, b
//     kind 1 diffeo:    per sample j=0..T: n*n doubles Dx, then n*n doubles Dy

enum class FieldType : std::uint32_t { scalar = 0, oneform = 1, vector = 2, displacement = 3 };

void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const OneFormField& f);
void write_field(std::ostream& os, const VectorField& f, FieldType type = FieldType::vector);

ScalarField read_scalar_field(std::istream& is);
OneFormField read_oneform_field(std::istream& is);
VectorField read_vector_field(std::istream& is);

using PathFile = std::variant<GeneratorPath, DiffeoPath>;

void write_path(std::ostream& os, const GeneratorPath& gen);
void write_path(std::ostream& os, const DiffeoPath& path);
PathFile read_path(std::istream& is);

void write_path_file(const std::string& filename, const PathFile& path);
PathFile read_path_file(const std::string& filename);

// Lossless JSON view of a path container: the full numeric payload plus
// per-sample summary statistics for generators. Round trips through
// path_from_json recover byte-identical payloads.
std::string path_to_json(const PathFile& path);
PathFile path_from_json(const std::string& text);

// Appends one row to the CSV ledger (writes the header on first use):
// path_id, functional, p, N, T, value.
void append_length_report(const std::string& csv_path, const LengthReport& report);

}  // namespace hoferlike
