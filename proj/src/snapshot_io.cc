// Copyright 2026 The GuiKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "guikit/snapshot_io.h"

#include <algorithm>
#include <fstream>

#include "guikit/errors.h"

namespace guikit {

using nlohmann::json;

namespace {

bool IsInteger(const json& v) {
  return v.is_number_integer() || v.is_number_unsigned();
}

void CheckBox(const json& v, const std::string& ptr,
              std::vector<std::string>& issues) {
  if (!v.is_array() || v.size() != 4 ||
      !std::all_of(v.begin(), v.end(), IsInteger)) {
    issues.push_back(ptr + ": bbox must be an array of 4 integers");
    return;
  }
  if (v[2].get<int64_t>() < 1 || v[3].get<int64_t>() < 1) {
    issues.push_back(ptr + ": bbox w and h must be >= 1");
  }
}

PixelBox ParseBox(const json& v) {
  return PixelBox{v[0].get<int64_t>(), v[1].get<int64_t>(),
                  v[2].get<int64_t>(), v[3].get<int64_t>()};
}

bool Intersects(const PixelBox& box, int64_t w, int64_t h) {
  return box.PixelRight() > 0 && box.PixelLeft() < w &&
         box.PixelBottom() > 0 && box.PixelTop() < h;
}

void ValidateNode(const json& node, const std::string& ptr, int64_t vw,
                  int64_t vh, bool viewport_known,
                  std::vector<std::string>& issues) {
  if (!node.is_object()) {
    issues.push_back(ptr + ": node must be an object");
    return;
  }
  if (!node.contains("tag") || !node["tag"].is_string()) {
    issues.push_back(ptr + "/tag: missing or not a string");
  }
  if (!node.contains("bbox")) {
    issues.push_back(ptr + "/bbox: missing");
  } else {
    CheckBox(node["bbox"], ptr + "/bbox", issues);
  }
  if (node.contains("text") && !node["text"].is_null() &&
      !node["text"].is_string()) {
    issues.push_back(ptr + "/text: must be a string or null");
  }
  for (const char* flag : {"visible", "cursor_pointer", "has_event_listener"}) {
    if (node.contains(flag) && !node[flag].is_boolean()) {
      issues.push_back(ptr + "/" + flag + ": must be a boolean");
    }
  }
  if (node.contains("attrs")) {
    if (!node["attrs"].is_object()) {
      issues.push_back(ptr + "/attrs: must be an object");
    } else {
      for (const auto& [key, value] : node["attrs"].items()) {
        if (!value.is_string()) {
          issues.push_back(ptr + "/attrs/" + key + ": must be a string");
        }
      }
    }
  }
  const bool visible = !node.contains("visible") ||
                       !node["visible"].is_boolean() ||
                       node["visible"].get<bool>();
  if (viewport_known && visible && node.contains("bbox")) {
    const json& b = node["bbox"];
    if (b.is_array() && b.size() == 4 &&
        std::all_of(b.begin(), b.end(), IsInteger) &&
        !Intersects(ParseBox(b), vw, vh)) {
      issues.push_back(ptr + ": visible node lies outside the viewport");
    }
  }
  if (node.contains("children")) {
    if (!node["children"].is_array()) {
      issues.push_back(ptr + "/children: must be an array");
    } else {
      for (size_t i = 0; i < node["children"].size(); ++i) {
        ValidateNode(node["children"][i],
                     ptr + "/children/" + std::to_string(i), vw, vh,
                     viewport_known, issues);
      }
    }
  }
}

DomNode ParseNode(const json& node) {
  DomNode out;
  DomElement& e = out.element;
  e.tag = node["tag"].get<std::string>();
  if (node.contains("text") && node["text"].is_string()) {
    e.text = node["text"].get<std::string>();
  }
  e.bbox = ParseBox(node["bbox"]);
  e.visible = node.value("visible", true);
  e.cursor_pointer = node.value("cursor_pointer", false);
  e.has_event_listener = node.value("has_event_listener", false);
  if (node.contains("attrs")) {
    for (const std::string& key : AttributeWhitelist()) {
      if (node["attrs"].contains(key)) {
        e.attrs[key] = node["attrs"][key].get<std::string>();
      }
    }
  }
  if (node.contains("children")) {
    out.children.reserve(node["children"].size());
    for (const json& child : node["children"]) {
      out.children.push_back(ParseNode(child));
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> ValidateSnapshotJson(const json& doc) {
  std::vector<std::string> issues;
  if (!doc.is_object()) {
    issues.push_back("/: snapshot must be a JSON object");
    return issues;
  }
  if (!doc.contains("id") || !doc["id"].is_string() ||
      doc["id"].get<std::string>().empty()) {
    issues.push_back("/id: missing or empty");
  }
  bool viewport_known = true;
  for (const char* key : {"viewport_w", "viewport_h"}) {
    if (!doc.contains(key)) {
      issues.push_back(std::string("/") + key + ": missing");
      viewport_known = false;
    } else if (!IsInteger(doc[key]) || doc[key].get<int64_t>() < 1) {
      issues.push_back(std::string("/") + key + ": must be a positive integer");
      viewport_known = false;
    }
  }
  for (const char* key : {"source_url", "screenshot_ref", "language"}) {
    if (doc.contains(key) && !doc[key].is_string()) {
      issues.push_back(std::string("/") + key + ": must be a string");
    }
  }
  if (doc.contains("screenshot_ref") && doc["screenshot_ref"].is_string() &&
      std::filesystem::path(doc["screenshot_ref"].get<std::string>())
          .is_absolute()) {
    issues.push_back("/screenshot_ref: must be a relative path");
  }
  const int64_t vw = viewport_known ? doc["viewport_w"].get<int64_t>() : 0;
  const int64_t vh = viewport_known ? doc["viewport_h"].get<int64_t>() : 0;
  if (!doc.contains("dom")) {
    issues.push_back("/dom: missing");
  } else {
    ValidateNode(doc["dom"], "/dom", vw, vh, viewport_known, issues);
  }
  if (doc.contains("icons")) {
    if (!doc["icons"].is_array()) {
      issues.push_back("/icons: must be an array");
    } else {
      for (size_t i = 0; i < doc["icons"].size(); ++i) {
        const json& icon = doc["icons"][i];
        const std::string ptr = "/icons/" + std::to_string(i);
        if (!icon.is_object() || !icon.contains("bbox") ||
            !icon.contains("caption") || !icon["caption"].is_string()) {
          issues.push_back(ptr + ": icon needs bbox and caption");
          continue;
        }
        const size_t before = issues.size();
        CheckBox(icon["bbox"], ptr + "/bbox", issues);
        if (issues.size() == before && viewport_known &&
            !BoxInside(ParseBox(icon["bbox"]), vw, vh)) {
          issues.push_back(ptr + "/bbox: icon box outside the viewport");
        }
      }
    }
  }
  return issues;
}

Snapshot SnapshotFromJson(const json& doc, const std::string& where) {
  const auto issues = ValidateSnapshotJson(doc);
  if (!issues.empty()) throw SchemaError(where, issues.front());
  Snapshot s;
  s.id = doc["id"].get<std::string>();
  s.source_url = doc.value("source_url", "");
  s.viewport_w = doc["viewport_w"].get<int64_t>();
  s.viewport_h = doc["viewport_h"].get<int64_t>();
  s.screenshot_ref = doc.value("screenshot_ref", "");
  s.language = doc.value("language", "");
  s.dom = DomTree(ParseNode(doc["dom"]));
  if (doc.contains("icons")) {
    for (const json& icon : doc["icons"]) {
      s.icons.push_back(
          IconCaption{ParseBox(icon["bbox"]), icon["caption"].get<std::string>()});
    }
  }
  return s;
}

json BoxToJson(const PixelBox& box) {
  return json::array({box.cx, box.cy, box.w, box.h});
}

json DomNodeToJson(const DomNode& node) {
  const DomElement& e = node.element;
  json out = {{"tag", e.tag},
              {"text", e.text ? json(*e.text) : json(nullptr)},
              {"bbox", BoxToJson(e.bbox)},
              {"visible", e.visible},
              {"cursor_pointer", e.cursor_pointer},
              {"has_event_listener", e.has_event_listener},
              {"attrs", json::object()},
              {"children", json::array()}};
  for (const auto& [k, v] : e.attrs) out["attrs"][k] = v;
  for (const DomNode& child : node.children) {
    out["children"].push_back(DomNodeToJson(child));
  }
  return out;
}

json SnapshotToJson(const Snapshot& s) {
  json out = {{"id", s.id},
              {"source_url", s.source_url},
              {"viewport_w", s.viewport_w},
              {"viewport_h", s.viewport_h},
              {"screenshot_ref", s.screenshot_ref},
              {"language", s.language},
              {"dom", s.dom.empty() ? json(nullptr) : DomNodeToJson(s.dom.ToNested())},
              {"icons", json::array()}};
  for (const IconCaption& icon : s.icons) {
    out["icons"].push_back({{"bbox", BoxToJson(icon.bbox)}, {"caption", icon.caption}});
  }
  return out;
}

Snapshot LoadSnapshotFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string(), "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string(), std::string("invalid JSON: ") + e.what());
  }
  return SnapshotFromJson(doc, path.string());
}

std::vector<std::filesystem::path> ListSnapshotFiles(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace guikit
