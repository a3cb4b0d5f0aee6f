#include "diskpat/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "diskpat/curvature.hpp"

namespace diskpat {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> keys,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    require(known, ErrorCode::BadParam,
            "unknown key '" + it.key() + "' in " + where);
  }
}

std::string scalar_name(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(ErrorCode::BadParam, "expected string or integer in " + where);
}

}  // namespace

std::string pattern_to_json(const CutSurface& s) {
  json out;
  out["genus"] = s.genus();
  out["disks"] = s.disk_ids();

  json circles = json::array();
  for (CircleIndex c = 0; c < s.num_circles(); ++c) {
    json jc;
    jc["id"] = s.circle_name(c);
    jc["disk"] = s.disk_id(s.circle(c).disk);
    jc["sign"] = s.circle(c).sign > 0 ? "+" : "-";
    json slots = json::array();
    for (size_t pos = 0; pos < s.circle(c).slots.size(); ++pos)
      slots.push_back(pos);
    jc["slots"] = slots;
    circles.push_back(jc);
  }
  out["circles"] = circles;

  json arcs = json::array();
  for (ArcIndex a = 0; a < s.num_arcs(); ++a) {
    json ja;
    ja["id"] = a;
    json ends = json::array();
    for (SlotId e : s.arc(a)) {
      const auto& info = s.slot(e);
      ends.push_back(json::array({s.circle_name(info.circle), info.pos}));
    }
    ja["ends"] = ends;
    arcs.push_back(ja);
  }
  out["arcs"] = arcs;

  json pairing = json::object();
  for (int d = 0; d < s.num_disks(); ++d) {
    json rows = json::array();
    for (SlotId u : s.circle(s.plus_circle(d)).slots) {
      rows.push_back(json::array(
          {s.slot(u).pos, s.slot(s.partner_slot(u)).pos}));
    }
    pairing[s.disk_id(d)] = rows;
  }
  out["pairing"] = pairing;
  return out.dump(2) + "\n";
}

CutSurface pattern_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::BadParam, std::string("pattern file is not JSON: ") + e.what());
  }
  require(doc.is_object(), ErrorCode::BadParam, "pattern file must be an object");
  reject_unknown_keys(doc, {"genus", "disks", "circles", "arcs", "pairing"},
                      "pattern file");
  for (const char* k : {"genus", "disks", "circles", "arcs", "pairing"})
    require(doc.contains(k), ErrorCode::BadParam,
            std::string("pattern file missing key '") + k + "'");

  SurfaceSpec spec;
  require(doc["genus"].is_number_integer(), ErrorCode::BadParam,
          "genus must be an integer");
  spec.genus = doc["genus"].get<int>();
  std::map<std::string, int> disk_index;
  for (const auto& d : doc["disks"]) {
    std::string id = scalar_name(d, "disks");
    require(!disk_index.count(id), ErrorCode::BadParam, "duplicate disk id " + id);
    disk_index[id] = static_cast<int>(spec.disk_ids.size());
    spec.disk_ids.push_back(id);
  }
  const int k = static_cast<int>(spec.disk_ids.size());
  spec.circle_slots.resize(2 * k);

  // (circle id, slot name) -> raw slot int handed to the builder.
  std::map<std::string, std::map<std::string, int>> slot_ids;
  std::map<std::string, int> circle_index;
  int next_raw = 0;
  require(doc["circles"].is_array(), ErrorCode::BadParam, "circles must be an array");
  for (const auto& jc : doc["circles"]) {
    require(jc.is_object(), ErrorCode::BadParam, "circle entries must be objects");
    reject_unknown_keys(jc, {"id", "disk", "sign", "slots"}, "circle");
    for (const char* key : {"id", "disk", "sign", "slots"})
      require(jc.contains(key), ErrorCode::BadParam,
              std::string("circle missing key '") + key + "'");
    std::string id = scalar_name(jc["id"], "circle id");
    std::string disk = scalar_name(jc["disk"], "circle disk");
    std::string sign = jc["sign"].get<std::string>();
    require(disk_index.count(disk), ErrorCode::BadParam,
            "circle references unknown disk " + disk);
    require(sign == "+" || sign == "-", ErrorCode::BadParam,
            "circle sign must be '+' or '-'");
    int c = 2 * disk_index[disk] + (sign == "+" ? 0 : 1);
    require(!circle_index.count(id), ErrorCode::BadParam, "duplicate circle id " + id);
    require(spec.circle_slots[c].empty() && !slot_ids.count(id),
            ErrorCode::BadParam, "two circles declared for one disk side");
    circle_index[id] = c;
    for (const auto& sname : jc["slots"]) {
      std::string name = scalar_name(sname, "slots");
      require(!slot_ids[id].count(name), ErrorCode::BadParam,
              "duplicate slot name " + name + " on circle " + id);
      slot_ids[id][name] = next_raw;
      spec.circle_slots[c].push_back(next_raw);
      ++next_raw;
    }
  }
  require(static_cast<int>(circle_index.size()) == 2 * k, ErrorCode::BadParam,
          "every disk needs a + and a - circle");

  auto lookup_slot = [&](const json& ref, const std::string& where) -> int {
    require(ref.is_array() && ref.size() == 2, ErrorCode::BadParam,
            "slot reference must be [circle, slot] in " + where);
    std::string cid = scalar_name(ref[0], where);
    std::string sname = scalar_name(ref[1], where);
    auto itc = slot_ids.find(cid);
    require(itc != slot_ids.end(), ErrorCode::BadParam,
            "unknown circle " + cid + " in " + where);
    auto its = itc->second.find(sname);
    require(its != itc->second.end(), ErrorCode::BadParam,
            "unknown slot " + sname + " on circle " + cid + " in " + where);
    return its->second;
  };

  require(doc["arcs"].is_array(), ErrorCode::BadParam, "arcs must be an array");
  for (const auto& ja : doc["arcs"]) {
    require(ja.is_object(), ErrorCode::BadParam, "arc entries must be objects");
    reject_unknown_keys(ja, {"id", "ends"}, "arc");
    require(ja.contains("ends"), ErrorCode::BadParam, "arc missing 'ends'");
    const auto& ends = ja["ends"];
    require(ends.is_array() && ends.size() == 2, ErrorCode::BadParam,
            "arc ends must list two endpoints");
    spec.arcs.push_back({lookup_slot(ends[0], "arc"), lookup_slot(ends[1], "arc")});
  }

  require(doc["pairing"].is_object(), ErrorCode::BadParam, "pairing must be an object");
  spec.pairing.resize(k);
  for (auto it = doc["pairing"].begin(); it != doc["pairing"].end(); ++it) {
    require(disk_index.count(it.key()), ErrorCode::BadParam,
            "pairing references unknown disk " + it.key());
    int d = disk_index[it.key()];
    std::string plus_id, minus_id;
    for (const auto& [cid, c] : circle_index) {
      if (c == 2 * d) plus_id = cid;
      if (c == 2 * d + 1) minus_id = cid;
    }
    for (const auto& row : it.value()) {
      require(row.is_array() && row.size() == 2, ErrorCode::BadParam,
              "pairing rows must be [plus slot, minus slot]");
      auto find_in = [&](const std::string& cid, const json& v) {
        std::string name = scalar_name(v, "pairing");
        auto its = slot_ids[cid].find(name);
        require(its != slot_ids[cid].end(), ErrorCode::BadParam,
                "pairing references unknown slot " + name);
        return its->second;
      };
      spec.pairing[d].push_back({find_in(plus_id, row[0]), find_in(minus_id, row[1])});
    }
  }
  return build_cut_surface(spec);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::BadParam, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::BadParam, "cannot write " + path);
  out << text;
}

CutSurface load_pattern_file(const std::string& path) {
  return pattern_from_json(read_text_file(path));
}

GonDiagram diagram_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::BadParam, std::string("diagram file is not JSON: ") + e.what());
  }
  require(doc.is_object(), ErrorCode::BadParam, "diagram file must be an object");
  reject_unknown_keys(doc, {"topology", "faces", "boundary_jumps"}, "diagram file");
  require(doc.contains("topology") && doc.contains("faces"), ErrorCode::BadParam,
          "diagram needs 'topology' and 'faces'");
  GonDiagram d;
  std::string topo = doc["topology"].get<std::string>();
  if (topo == "disk")
    d.topology = GonDiagram::Topology::Disk;
  else if (topo == "torus")
    d.topology = GonDiagram::Topology::Torus;
  else
    fail(ErrorCode::BadParam, "topology must be 'disk' or 'torus'");
  for (const auto& f : doc["faces"]) {
    require(f.is_array() && f.size() == 2, ErrorCode::BadParam,
            "faces entries must be [m, n]");
    d.faces.push_back({f[0].get<int>(), f[1].get<int>()});
  }
  if (doc.contains("boundary_jumps")) {
    for (const auto& j : doc["boundary_jumps"]) {
      require(j.is_array() && j.size() == 2, ErrorCode::BadParam,
              "boundary_jumps entries must be [n1, n2]");
      d.boundary_jumps.push_back({j[0].get<int>(), j[1].get<int>()});
    }
  }
  return d;
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace diskpat
