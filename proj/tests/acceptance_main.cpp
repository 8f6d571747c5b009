// Acceptance gate: one pass/fail line per criterion. Filled in as the
// corresponding functionality lands.
#include <cstdio>

int main() {
  std::puts("acceptance: no criteria wired yet");
  return 1;
}
