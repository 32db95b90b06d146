// Copyright 2026 The ecoorc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECOORC_HTTP_FETCH_HPP_
#define ECOORC_HTTP_FETCH_HPP_

#include <string>

#include "ecoorc/gridmix.hpp"
#include "httplib.h"

namespace ecoorc {

/// Production transport for RemoteMixBackend. Kept out of gridmix.hpp so
/// code that only reads fixtures never pulls in the HTTP stack.
inline HttpGetFn httplib_fetcher() {
  return [](const std::string& url) -> std::string {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error("bad url (no scheme): " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    std::string origin = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    httplib::Client client(origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    auto res = client.Get(path);
    if (!res) {
      throw Error("request failed: " + url + " (" + httplib::to_string(res.error()) + ")");
    }
    if (res->status != 200) {
      throw Error("request failed: " + url + " (HTTP " + std::to_string(res->status) + ")");
    }
    return res->body;
  };
}

}  // namespace ecoorc

#endif  // ECOORC_HTTP_FETCH_HPP_
