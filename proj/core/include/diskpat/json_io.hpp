#pragma once

// Pattern and diagram file formats.
//
// Pattern files are UTF-8 JSON with exactly the top-level keys
//   genus    : integer >= 1
//   disks    : array of distinct disk id strings
//   circles  : array of {id, disk, sign ("+"/"-"), slots: [slot names]}
//   arcs     : array of {id, ends: [[circle id, slot name], [circle id, slot name]]}
//   pairing  : object disk id -> array of [plus slot name, minus slot name]
// Slot names may be integers or strings, unique within their circle.
// Unknown keys are rejected.  docs/pattern-schema.json carries the formal
// schema; canonical output uses positional integer slot names.
//
// Gon diagram files:
//   topology        : "disk" | "torus"
//   faces           : array of [m, n]
//   boundary_jumps  : array of [n1, n2] (disk only)

#include <string>

#include "diskpat/pattern.hpp"

namespace diskpat {

struct GonDiagram;

std::string pattern_to_json(const CutSurface& s);
CutSurface pattern_from_json(const std::string& text);

CutSurface load_pattern_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

GonDiagram diagram_from_json(const std::string& text);

// FNV-1a over the canonical pattern serialization; embedded in
// certificates so replays can detect input drift.
std::string content_hash(const std::string& text);

}  // namespace diskpat
