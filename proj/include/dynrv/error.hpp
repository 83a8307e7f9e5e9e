#pragma once

#include <stdexcept>
#include <string>

namespace dynrv {

enum class Errc {
  DimensionTooSmall,
  InvalidDoor,
  OutOfGrid,
  NotOnBoundary,
  AtCorner,
  ParallelLines,
  NotActive,
  IllegalScript,
  InvalidParams,
  NoEscape,
  StateSpaceExceeded,
  MalformedTrace,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::InvalidDoor: return "InvalidDoor";
    case Errc::OutOfGrid: return "OutOfGrid";
    case Errc::NotOnBoundary: return "NotOnBoundary";
    case Errc::AtCorner: return "AtCorner";
    case Errc::ParallelLines: return "ParallelLines";
    case Errc::NotActive: return "NotActive";
    case Errc::IllegalScript: return "IllegalScript";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NoEscape: return "NoEscape";
    case Errc::StateSpaceExceeded: return "StateSpaceExceeded";
    case Errc::MalformedTrace: return "MalformedTrace";
  }
  return "Unknown";
}

}  // namespace dynrv
