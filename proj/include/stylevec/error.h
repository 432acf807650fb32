// Copyright 2026 The Stylevec Authors.
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

#ifndef STYLEVEC_ERROR_H_
#define STYLEVEC_ERROR_H_

#include <stdexcept>
#include <string>

namespace stylevec {

// Raised for malformed input data, incompatible artifacts and invalid
// configuration. Messages carry enough context (doc id, line, feature name)
// to locate the offending record.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stylevec

#endif  // STYLEVEC_ERROR_H_
