class Check5 {
  Config config;

  void verboseGuard() {
    if (config.isVerbose()) { log(); } // plant:c1
  }

  void nameGuard() {
    if (config.getName() == null) { log(); } // plant:c2
  }

  void sizeGuard() {
    if (config.getMaxSize() > 100) { log(); } // plant:c3
  }

  void retryInit() {
    config.setRetries(7); // plant:c4
  }

  void timeoutInit() {
    config.timeout = 30; // plant:c5
  }

  void labelGuard() {
    if (config.getLabel() == null || config.getLabel().equals("")) { log(); } // plant:c6
  }

  void itemsGuard() {
    if (config.getItems() != null && config.getItems().length > 0) { log(); } // plant:c7
  }

  void modeGuard() {
    int mode = config.getMode();
    if (mode == 1) { log(); } else if (mode == 2) { log(); } else if (mode == 3) { log(); } // plant:c8
  }

  void formatGuard() {
    String format = config.getFormat();
    if (format.equals("xml") || format.equals("json")) { log(); } // plant:c9
  }

  void ratioGuard() {
    double ratio = config.getRatio();
    if (ratio != ratio) { log(); } // plant:c10
  }

  void ownerGuardA() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void ownerGuardB() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void log() {}
}
