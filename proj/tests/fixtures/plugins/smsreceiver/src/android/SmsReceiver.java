package org.sample;

public class SmsReceiver extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    String messageBody = lastReceivedSms();
    callbackContext.success(messageBody);
    return true;
  }
}
