#pragma once

#include "cyclotome/cartier.hpp"
#include "cyclotome/derham.hpp"

#include <iosfwd>
#include <string>

namespace cyclotome {

inline const char* artifact_version() { return "cyclotome 1.0.0"; }

// Structured-text serializations with a stable field order; no timestamps,
// so identical jobs reproduce identical bytes. set format = "json" for the
// JSON rendering of the same content.
std::string render_homology_report(const HomologyReport& r, const std::string& format);
std::string render_uprime_certificate(const UPrimeCertificate& c, const std::string& format);
std::string render_vanishing_certificate(const VanishingCertificate& c, const std::string& format);
std::string render_cartier_certificate(const CartierCertificate& c, const std::string& format);
std::string render_derham_report(const DerhamReport& r, const std::string& format);
std::string render_degeneration_report(const DegenerationReport& r, const std::string& format);

// Complex dump format: header with the window and dims, then each
// differential in the field_linalg triple format.
void dump_complex(std::ostream& os, const ChainComplex& c);
ChainComplex read_complex(std::istream& is);

std::string matrix_to_text(const SparseMat& m);

} // namespace cyclotome
