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

#ifndef GUIKIT_SNAPSHOT_IO_H_
#define GUIKIT_SNAPSHOT_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "guikit/snapshot.h"

namespace guikit {

// Snapshot interchange: one JSON document per captured page.
//
//   {"id": "...", "source_url": "...", "viewport_w": 1280, "viewport_h": 720,
//    "screenshot_ref": "shots/x.png", "language": "en",
//    "dom": {"tag": "html", "text": null, "bbox": [cx, cy, w, h],
//            "visible": true, "cursor_pointer": false,
//            "has_event_listener": false, "attrs": {...}, "children": [...]},
//    "icons": [{"bbox": [cx, cy, w, h], "caption": "..."}]}
//
// Required: id, viewport_w, viewport_h, dom, and tag/bbox on every node.

// Every schema violation found in `doc`, each prefixed with a JSON pointer.
std::vector<std::string> ValidateSnapshotJson(const nlohmann::json& doc);

// Throws SchemaError carrying `where` and the first violation.
Snapshot SnapshotFromJson(const nlohmann::json& doc,
                          const std::string& where = "");
nlohmann::json SnapshotToJson(const Snapshot& snapshot);

nlohmann::json DomNodeToJson(const DomNode& node);
nlohmann::json BoxToJson(const PixelBox& box);

Snapshot LoadSnapshotFile(const std::filesystem::path& path);

// Snapshot files (*.json) directly inside `dir`, sorted by path.
std::vector<std::filesystem::path> ListSnapshotFiles(
    const std::filesystem::path& dir);

}  // namespace guikit

#endif  // GUIKIT_SNAPSHOT_IO_H_
