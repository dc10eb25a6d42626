#ifndef FIBDIFF_CERTIFICATE_HPP
#define FIBDIFF_CERTIFICATE_HPP

#include <string>
#include <vector>

#include "fibdiff/pipeline.hpp"

namespace fibdiff::cert {

inline constexpr const char* kToolName = "fibdiff";
inline constexpr const char* kToolVersion = "1.0.0";

// Deterministic decimal rendering of an exact rational, round-to-nearest at
// sig_digits significant digits, "d.dddddddddddde+NN" form.
std::string decimal_string(const mpq_class& v, int sig_digits = 12);

// The full certificate as a structured text document (JSON). Byte-identical
// for identical certificates.
std::string render_certificate(const pipeline::ProofCertificate& cert);

void emit_certificate(const pipeline::ProofCertificate& cert,
                      const std::string& path);

// Reads back the verdict of an emitted certificate. Throws DomainError if
// the document carries none (failed run) or cannot be parsed.
std::vector<seq::SolutionTriple> parse_verdict(const std::string& path);

}  // namespace fibdiff::cert

#endif
