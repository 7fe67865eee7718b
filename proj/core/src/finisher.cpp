#include "hullfilter/finisher.hpp"

#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace hullfilter {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("external finisher: " + msg);
}

std::string format_points(const PointCloud& cloud) {
  std::string out;
  out.reserve(cloud.size() * 36);
  char line[96];
  for (const Point3& p : cloud.points) {
    const int len = std::snprintf(line, sizeof line, "%.9g %.9g %.9g\n",
                                  double(p.x), double(p.y), double(p.z));
    out.append(line, std::size_t(len));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> run_external_finisher(const PointCloud& candidates,
                                               const std::string& command) {
  // The child may close its stdin early; report that via EPIPE, not a signal.
  static const bool sigpipe_ignored = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) fail("pipe() failed");

  const pid_t pid = fork();
  if (pid < 0) fail("fork() failed");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);

  const std::string input = format_points(candidates);
  std::size_t written = 0;
  std::string output;
  bool write_open = true;
  char buf[1 << 16];

  // Interleave writes and reads so neither pipe can fill up and deadlock;
  // the loop ends when the child closes its stdout.
  while (true) {
    pollfd fds[2];
    int nfds = 0;
    int read_slot = -1, write_slot = -1;
    if (write_open) {
      write_slot = nfds;
      fds[nfds++] = {to_child[1], POLLOUT, 0};
    }
    read_slot = nfds;
    fds[nfds++] = {from_child[0], POLLIN, 0};

    if (poll(fds, nfds_t(nfds), -1) < 0) {
      if (errno == EINTR) continue;
      fail("poll() failed");
    }

    if (write_slot >= 0 && (fds[write_slot].revents & (POLLOUT | POLLERR))) {
      const ssize_t w =
          write(to_child[1], input.data() + written, input.size() - written);
      if (w < 0 && errno != EINTR) {
        if (errno == EPIPE) {
          write_open = false;  // child stopped reading; it may still answer
          close(to_child[1]);
        } else {
          fail("write() failed");
        }
      } else if (w > 0) {
        written += std::size_t(w);
        if (written == input.size()) {
          write_open = false;
          close(to_child[1]);
        }
      }
    }

    if (fds[read_slot].revents & (POLLIN | POLLHUP)) {
      const ssize_t r = read(from_child[0], buf, sizeof buf);
      if (r < 0 && errno != EINTR) fail("read() failed");
      if (r == 0) break;  // child closed stdout
      if (r > 0) output.append(buf, std::size_t(r));
    }
  }
  if (write_open) close(to_child[1]);
  close(from_child[0]);

  int status = 0;
  if (waitpid(pid, &status, 0) < 0) fail("waitpid() failed");
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    fail("command '" + command + "' exited with status " +
         std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));

  std::vector<std::size_t> indices;
  const char* s = output.c_str();
  char* end = nullptr;
  while (*s) {
    while (*s == '\n' || *s == '\r' || *s == ' ' || *s == '\t') ++s;
    if (!*s) break;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s) fail("unparsable index output");
    if (v >= candidates.size()) fail("index " + std::to_string(v) + " out of range");
    indices.push_back(std::size_t(v));
    s = end;
  }
  return indices;
}

}  // namespace hullfilter
