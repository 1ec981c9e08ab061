// Copyright 2026 The PCC Constitutions Authors.
//
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

#ifndef PCC_HTTP_API_H_
#define PCC_HTTP_API_H_

#include <memory>
#include <string>

#include "pcc/rating_service.h"

namespace pcc {

// JSON API over a RatingService:
//   POST /participants              -> {"participant_id"}
//   GET  /participants/{id}/tasks   -> both tasks with transcripts and
//                                      comprehension questions (no answers)
//   POST /responses                 -> acknowledgement; 404 unknown task,
//                                      409 duplicate, 422 malformed
//   GET  /admin/export              -> included comparisons per dimension;
//                                      requires "Authorization: Bearer <token>"
class RatingServer {
 public:
  RatingServer(RatingService& service, std::string admin_token);
  ~RatingServer();

  RatingServer(const RatingServer&) = delete;
  RatingServer& operator=(const RatingServer&) = delete;

  // Returns false when the address cannot be bound.
  bool Bind(const std::string& host, int port);
  // Binds an ephemeral port and returns it, or -1.
  int BindToAnyPort(const std::string& host);
  // Blocks until Stop().
  bool Listen();
  void Stop();
  bool IsRunning() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pcc

#endif  // PCC_HTTP_API_H_
