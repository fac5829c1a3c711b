#include <string>
#include <vector>

#include "tqfold/cli.hpp"

int main(int argc, char** argv) {
    return tqfold::run(std::vector<std::string>(argv + 1, argv + argc));
}
