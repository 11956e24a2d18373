#include <iostream>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::cerr << "syncrel: command-line interface not wired up yet\n";
  return 2;
}
