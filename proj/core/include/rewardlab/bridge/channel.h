// Copyright 2026 The rewardlab Authors
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

#ifndef REWARDLAB_BRIDGE_CHANNEL_H_
#define REWARDLAB_BRIDGE_CHANNEL_H_

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <sys/types.h>
#include <vector>

namespace rewardlab::bridge {

// Newline-framed text over a pair of file descriptors (a socket uses the
// same descriptor twice). Writes are serialized; one thread may read.
class FdChannel {
 public:
  FdChannel(int read_fd, int write_fd, pid_t child = -1);
  ~FdChannel();
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  // Throws kConnectionLost if the peer is gone.
  void WriteLine(const std::string& line);
  // Next line without its terminator; nullopt at end of stream or after
  // Close(). Polls so that Close() from another thread unblocks it.
  std::optional<std::string> ReadLine();
  // Idempotent; the peer sees end of stream. The destructor reaps a
  // spawned child.
  void Close();
  bool closed() const { return closed_; }

 private:
  int read_fd_;
  int write_fd_;
  pid_t child_;
  std::atomic<bool> closed_{false};
  std::mutex write_mu_;
  std::mutex close_mu_;
  std::string buffer_;
};

// Throws kConnectionLost if nothing listens on host:port.
std::unique_ptr<FdChannel> ConnectTcp(const std::string& host, int port);

// Runs argv[0] with its stdin/stdout connected to the channel. Throws
// kStartup if the process cannot be created.
std::unique_ptr<FdChannel> SpawnProcess(const std::vector<std::string>& argv);

// Connected in-memory pair (socketpair).
std::pair<std::unique_ptr<FdChannel>, std::unique_ptr<FdChannel>> ChannelPair();

}  // namespace rewardlab::bridge

#endif  // REWARDLAB_BRIDGE_CHANNEL_H_
