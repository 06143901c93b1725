// Placeholder; the real CLI lands once the library surface is complete.
int main() { return 0; }
