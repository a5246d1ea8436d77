#pragma once

#include <stdexcept>
#include <string>

namespace lmap {

// Base for all named library errors. The CLI reports `name()` on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define LMAP_ERROR(NAME)                                                      \
  class NAME : public Error {                                                 \
   public:                                                                    \
    explicit NAME(const std::string& what) : Error(#NAME, what) {}            \
  };

LMAP_ERROR(TooFewVertices)
LMAP_ERROR(NotConvex)
LMAP_ERROR(ParallelEdges)
LMAP_ERROR(SameEdge)
LMAP_ERROR(SameUnit)
LMAP_ERROR(NotChasing)
LMAP_ERROR(VertexOutOfRange)
LMAP_ERROR(NotSorted)
LMAP_ERROR(ParallelLines)
LMAP_ERROR(ZeroFactor)
LMAP_ERROR(QuadrantMismatch)
LMAP_ERROR(NotInPortion)
LMAP_ERROR(NotInscribed)
LMAP_ERROR(GenerationFailed)
LMAP_ERROR(NoCandidates)
LMAP_ERROR(InputError)

#undef LMAP_ERROR

}  // namespace lmap
