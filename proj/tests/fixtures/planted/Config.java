class Config {
  boolean verbose;
  String name;
  int maxSize;
  int retries;
  int timeout;
  String label;
  String[] items;
  int mode;
  String format;
  double ratio;
  String owner;

  boolean isVerbose() {
    return verbose;
  }

  String getName() {
    return name;
  }

  int getMaxSize() {
    return maxSize;
  }

  void setRetries(int value) {
    retries = value;
  }

  String getLabel() {
    return label;
  }

  String[] getItems() {
    return items;
  }

  int getMode() {
    return mode;
  }

  String getFormat() {
    return format;
  }

  double getRatio() {
    return ratio;
  }

  String getOwner() {
    return owner;
  }
}
