#include "prooflab/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

namespace prooflab {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& cwd,
                          std::int64_t timeout_ms) {
  ProcessResult result;
  if (argv.empty()) {
    result.spawn_failed = true;
    result.spawn_error = "empty argv";
    return result;
  }

  int pipe_fds[2];
  if (pipe(pipe_fds) != 0) {
    result.spawn_failed = true;
    result.spawn_error = std::string("pipe: ") + std::strerror(errno);
    return result;
  }

  const auto start = Clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    close(pipe_fds[0]);
    close(pipe_fds[1]);
    result.spawn_failed = true;
    result.spawn_error = std::string("fork: ") + std::strerror(errno);
    return result;
  }

  if (pid == 0) {
    // Child: own process group so the parent can kill the whole tree.
    setpgid(0, 0);
    close(pipe_fds[0]);
    dup2(pipe_fds[1], STDOUT_FILENO);
    dup2(pipe_fds[1], STDERR_FILENO);
    close(pipe_fds[1]);
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) _exit(126);

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }

  // Parent. Mirror the child's setpgid to close the race.
  setpgid(pid, pid);
  close(pipe_fds[1]);
  fcntl(pipe_fds[0], F_SETFL, O_NONBLOCK);

  std::string output;
  bool killed = false;
  bool eof = false;
  std::int64_t killed_at_ms = 0;
  char buf[4096];

  auto elapsed_ms = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  };

  constexpr std::int64_t kPostKillGraceMs = 5000;
  while (!eof) {
    const std::int64_t remaining = timeout_ms - elapsed_ms();
    if (!killed && remaining <= 0) {
      kill(-pid, SIGKILL);
      killed = true;
      killed_at_ms = elapsed_ms();
    }
    // A descendant that left the process group could keep the pipe open
    // past the kill; stop reading after a grace period.
    if (killed && elapsed_ms() - killed_at_ms > kPostKillGraceMs) break;
    struct pollfd pfd{pipe_fds[0], POLLIN, 0};
    const int wait_ms = killed ? 100 : static_cast<int>(std::min<std::int64_t>(remaining, 200));
    const int rv = poll(&pfd, 1, std::max(wait_ms, 1));
    if (rv > 0) {
      for (;;) {
        const ssize_t n = read(pipe_fds[0], buf, sizeof(buf));
        if (n > 0) {
          output.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0) {
          eof = true;
          break;
        } else {
          if (errno == EAGAIN || errno == EWOULDBLOCK) break;
          eof = true;
          break;
        }
      }
    }
  }
  close(pipe_fds[0]);

  // The direct child cannot have been reaped yet, so this pid is still ours
  // even if it moved itself to another process group.
  if (killed) kill(pid, SIGKILL);

  int status = 0;
  waitpid(pid, &status, 0);

  result.wall_ms = elapsed_ms();
  result.timed_out = killed;
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
    if (result.exit_code == 127 && !killed) {
      result.spawn_failed = true;
      result.spawn_error = "exec failed: " + argv[0];
    } else if (result.exit_code == 126 && !killed) {
      result.spawn_failed = true;
      result.spawn_error = "chdir failed: " + cwd;
    }
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  result.output_lines = split_lines(output);
  return result;
}

}  // namespace prooflab
