#pragma once

#include <iosfwd>
#include <string>

#include "mlcomp/program.hpp"
#include "mlcomp/transformation.hpp"

namespace mlcomp {

// Text formats used repo-wide.
//
// Transformation:
//   transform n=<n> q=<q>
//   <q^n lines; line j holds the image digits of state j, space separated>
//
// Program:
//   program n=<n> q=<q>
//   <one line per instruction: "<target> : <q^n symbols>">

std::string to_text(const Transformation& f);
std::string to_text(const Program& p, int n, int q);

Transformation parse_transformation(std::istream& in);
Transformation parse_transformation_text(const std::string& text);
Program parse_program(std::istream& in, int* n_out = nullptr, int* q_out = nullptr);
Program parse_program_text(const std::string& text, int* n_out = nullptr, int* q_out = nullptr);

Transformation load_transformation(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace mlcomp
