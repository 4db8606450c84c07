var exec = require('cordova/exec');

exports.hide = function(success, failure) {
  exec(success, failure, 'Splashscreen', 'hide', []);
};
