package org.sample;

public class CalendarEvents extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    JSONArray events = queryCalendarProvider();
    callbackContext.success(events);
    return true;
  }
}
