package org.sample;

public class HttpFetch extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    String body = download("http://api.example.com/payload");
    callbackContext.success(body);
    return true;
  }
}
