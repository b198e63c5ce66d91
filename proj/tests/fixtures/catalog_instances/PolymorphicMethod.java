abstract class Scriptable {
  abstract Object getDefaultValue();
}

class Runtime {
  Object coerce(Scriptable scriptable) {
    return scriptable.getDefaultValue();
  }
}
