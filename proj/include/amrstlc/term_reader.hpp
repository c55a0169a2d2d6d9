#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "amrstlc/stlc.hpp"

// Parses the ASCII rendering produced by pretty() back into a typed term:
//
//   formula  := '\' IDENT '.' formula
//             | 'exists' IDENT+ '.' formula
//             | conj
//   conj     := app ('&' app)*          (left-associated)
//   app      := primary ('(' formula ')')*
//   primary  := 'true' | IDENT | '"' chars '"' | '(' formula ')'
//
// Existential binders have type e; lambda binder types are inferred by
// unification against the supplied constant signature (name → type). An
// identifier that is not bound must appear in the signature. Identifiers
// may contain hyphens and digits ("sick-05", "2"); quoted names keep their
// quotes, matching constant symbols derived from quoted graph constants.

namespace amrstlc {

class term_read_error : public std::runtime_error {
 public:
  term_read_error(const std::string& message, std::size_t offset)
      : std::runtime_error(message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Term read_term(const std::string& text, const std::map<std::string, Type>& constants);

}  // namespace amrstlc
