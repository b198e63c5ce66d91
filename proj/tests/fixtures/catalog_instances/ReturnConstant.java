class HttpDefaults {
  int defaultPort() {
    return 80;
  }
}
