var exec = require('cordova/exec');

exports.toggle = function(success, failure) {
  exec(success, failure, 'Flashlight', 'toggle', []);
};
