// Copyright (c) the Perturbkit Authors
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

#include "perturbkit/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <thread>

#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

void read_all(int fd, std::string& sink) {
  std::array<char, 65536> buf;
  for (;;) {
    const ssize_t n = read(fd, buf.data(), buf.size());
    if (n > 0) {
      sink.append(buf.data(), static_cast<size_t>(n));
    } else if (n == 0) {
      return;
    } else if (errno != EINTR) {
      return;
    }
  }
}

void write_all(int fd, const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = write(fd, data.data() + off, data.size() - off);
    if (n > 0) {
      off += static_cast<size_t>(n);
    } else if (errno == EINTR) {
      continue;
    } else {
      // EPIPE: the child stopped reading; its exit status reports the story.
      return;
    }
  }
}

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0) throw IoError("pipe: " + std::string(strerror(errno)));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) close(fds[1]);
    fds[1] = -1;
  }
};

}  // namespace

SubprocessResult run_subprocess(const std::string& command,
                                const std::string& stdin_data) {
  // A dying reader must surface as a short write, not a fatal signal.
  signal(SIGPIPE, SIG_IGN);

  Pipe in, out, err;
  const pid_t pid = fork();
  if (pid < 0) throw IoError("fork: " + std::string(strerror(errno)));
  if (pid == 0) {
    dup2(in.fds[0], STDIN_FILENO);
    dup2(out.fds[1], STDOUT_FILENO);
    dup2(err.fds[1], STDERR_FILENO);
    in.close_read();
    in.close_write();
    out.close_read();
    out.close_write();
    err.close_read();
    err.close_write();
    execl("/bin/sh", "sh", "-c", command.c_str(), nullptr);
    _exit(127);
  }

  in.close_read();
  out.close_write();
  err.close_write();

  SubprocessResult result;
  std::thread writer([&] {
    write_all(in.fds[1], stdin_data);
    in.close_write();
  });
  std::thread err_reader([&] { read_all(err.fds[0], result.err); });
  read_all(out.fds[0], result.out);
  writer.join();
  err_reader.join();

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

}  // namespace perturbkit
