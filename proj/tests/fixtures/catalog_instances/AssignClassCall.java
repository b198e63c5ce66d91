class ExecutorConfig {
  String classname;

  void useDefault() {
    classname = DefaultExecutor.class.getName();
  }
}

class DefaultExecutor {
}
