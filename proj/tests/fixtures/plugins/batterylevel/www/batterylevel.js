var exec = require('cordova/exec');

exports.get = function(success, failure) {
  exec(success, failure, 'BatteryLevel', 'read', []);
};
