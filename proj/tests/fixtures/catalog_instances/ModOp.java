class WeekdayCalc {
  void dayOfWeek(long daysSince19700101) {
    long remainder = daysSince19700101 % 7;
    use(remainder);
  }

  void use(long value) {}
}
