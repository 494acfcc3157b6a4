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

#include "rewardlab/bridge/channel.h"

#include <arpa/inet.h>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "rewardlab/common/error.h"

namespace rewardlab::bridge {

namespace {

constexpr int kPollMillis = 50;

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

FdChannel::FdChannel(int read_fd, int write_fd, pid_t child)
    : read_fd_(read_fd), write_fd_(write_fd), child_(child) {
  IgnoreSigpipe();
}

FdChannel::~FdChannel() {
  Close();
  ::close(read_fd_);
  if (child_ > 0) {
    // Give the child a moment to exit on end of input, then insist.
    for (int i = 0; i < 40; ++i) {
      if (::waitpid(child_, nullptr, WNOHANG) != 0) return;
      ::usleep(50'000);
    }
    ::kill(child_, SIGKILL);
    ::waitpid(child_, nullptr, 0);
  }
}

void FdChannel::WriteLine(const std::string& line) {
  std::lock_guard<std::mutex> lock(write_mu_);
  Require(!closed_, ErrorCode::kConnectionLost, "channel closed");
  std::string data = line;
  data.push_back('\n');
  size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(write_fd_, data.data() + off, data.size() - off);
    if (n < 0 && errno == EINTR) continue;
    Require(n > 0, ErrorCode::kConnectionLost,
            std::string("write failed: ") + std::strerror(errno));
    off += static_cast<size_t>(n);
  }
}

std::optional<std::string> FdChannel::ReadLine() {
  for (;;) {
    const size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (closed_) return std::nullopt;
    pollfd p{read_fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, kPollMillis);
    if (ready < 0 && errno == EINTR) continue;
    if (ready < 0) return std::nullopt;
    if (ready == 0) continue;
    char chunk[4096];
    const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return std::nullopt;
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

// Descriptors stay open until destruction so a concurrent reader never sees
// a recycled fd; shutting down the write side lets the peer see EOF.
void FdChannel::Close() {
  std::lock_guard<std::mutex> lock(close_mu_);
  if (closed_.exchange(true)) return;
  std::lock_guard<std::mutex> wlock(write_mu_);
  if (read_fd_ == write_fd_) {
    ::shutdown(read_fd_, SHUT_RDWR);
  } else {
    ::close(write_fd_);
  }
}

std::unique_ptr<FdChannel> ConnectTcp(const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
  Require(rc == 0, ErrorCode::kConnectionLost,
          "cannot resolve " + host + ": " + ::gai_strerror(rc));
  int fd = -1;
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  Require(fd >= 0, ErrorCode::kConnectionLost,
          "cannot connect to " + host + ":" + std::to_string(port));
  return std::make_unique<FdChannel>(fd, fd);
}

std::unique_ptr<FdChannel> SpawnProcess(const std::vector<std::string>& argv) {
  Require(!argv.empty(), ErrorCode::kStartup, "empty command");
  int to_child[2], from_child[2];
  Require(::pipe(to_child) == 0 && ::pipe(from_child) == 0, ErrorCode::kStartup,
          "pipe creation failed");
  // Report exec failure through a close-on-exec pipe.
  int status_pipe[2];
  Require(::pipe2(status_pipe, O_CLOEXEC) == 0, ErrorCode::kStartup, "pipe creation failed");
  const pid_t pid = ::fork();
  Require(pid >= 0, ErrorCode::kStartup, "fork failed");
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::close(status_pipe[0]);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execvp(args[0], args.data());
    const int err = errno;
    (void)!::write(status_pipe[1], &err, sizeof(err));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  ::close(status_pipe[1]);
  int err = 0;
  const ssize_t n = ::read(status_pipe[0], &err, sizeof(err));
  ::close(status_pipe[0]);
  if (n > 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::waitpid(pid, nullptr, 0);
    Fail(ErrorCode::kStartup, "cannot run " + argv[0] + ": " + std::strerror(err));
  }
  return std::make_unique<FdChannel>(from_child[0], to_child[1], pid);
}

std::pair<std::unique_ptr<FdChannel>, std::unique_ptr<FdChannel>> ChannelPair() {
  int fds[2];
  Require(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0, ErrorCode::kStartup,
          "socketpair failed");
  return {std::make_unique<FdChannel>(fds[0], fds[0]), std::make_unique<FdChannel>(fds[1], fds[1])};
}

}  // namespace rewardlab::bridge
