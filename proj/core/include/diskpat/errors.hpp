#pragma once

#include <stdexcept>
#include <string>

namespace diskpat {

// Machine-readable reason attached to every domain error.  The CLI maps
// these onto exit codes: invalid input -> 2, budget -> 3.
enum class ErrorCode {
  SlotMismatch,      // slot used twice / unused / unknown reference
  NonPlanar,         // face trace does not close up to punctured spheres
  PairingInvalid,    // pairing not a bijection or not orientation-reversing
  InvalidSwap,       // curve does not separate the targeted disk pair
  NotDisjoint,       // curve crosses the disk system
  OrphanedCurve,     // surgery would detach a pattern curve from every disk
  NoValidPiece,      // neither compression piece gives a swap (corrupt state)
  HasWave,           // waveless precondition violated
  BudgetExceeded,    // enumeration work cap hit
  BadParam,          // generator parameter outside its documented range
  BadLabel,          // curvature label outside {4,6,8,12} or m < 1
  InadmissiblePair,  // jump angle requested for a (4,4) corner
  Unsupported,       // operation undefined on this degenerate input
  Internal,          // broken invariant; indicates a bug, not bad input
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace diskpat
