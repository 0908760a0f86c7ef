// cli_expect CODE REGEX PROGRAM [ARGS...]: runs PROGRAM, fails unless it exits
// with CODE and its combined output matches REGEX. "%" in an argument stands
// for ";" so sequents survive ctest's list handling.
#include <sys/wait.h>
#include <unistd.h>

#include <iostream>
#include <regex>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: cli_expect CODE REGEX PROGRAM [ARGS...]\n";
    return 2;
  }
  int expect = std::stoi(argv[1]);
  std::regex pattern(argv[2]);
  std::vector<std::string> args(argv + 3, argv + argc);
  for (auto& a : args)
    for (auto& c : a)
      if (c == '%') c = ';';

  int fd[2];
  if (pipe(fd) != 0) return 2;
  pid_t pid = fork();
  if (pid == 0) {
    dup2(fd[1], 1);
    dup2(fd[1], 2);
    close(fd[0]);
    std::vector<char*> cargs;
    for (auto& a : args) cargs.push_back(a.data());
    cargs.push_back(nullptr);
    execv(cargs[0], cargs.data());
    _exit(127);
  }
  close(fd[1]);
  std::string out;
  char buf[4096];
  for (ssize_t n; (n = read(fd[0], buf, sizeof buf)) > 0;) out.append(buf, static_cast<std::size_t>(n));
  int status = 0;
  waitpid(pid, &status, 0);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool ok = code == expect && std::regex_search(out, pattern);
  if (!ok) std::cerr << "exit " << code << " (expected " << expect << ")\n" << out;
  return ok ? 0 : 1;
}
