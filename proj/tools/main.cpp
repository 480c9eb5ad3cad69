#include "numrange/cli.hpp"

int main(int argc, char** argv) {
    return numrange::run(std::vector<std::string>(argv + 1, argv + argc));
}
